public class BitCount {
    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int b = args.length > 1 ? Integer.parseInt(args[1]) : 0;
        int v = a ^ (b << 3);
        int ones = 0;
        int bits = v;
        for (int i = 0; i < 32; i++) {
            if ((bits & 1) == 1) {
                ones++;
            }
            bits = bits >>> 1;
        }
        int mask = 0;
        mask |= 1 << (Math.abs(a) % 31);
        mask |= 4;
        System.out.println(v + " " + ones + " " + mask);
    }
}
