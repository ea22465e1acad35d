public class Gcd {
    static int gcd(int x, int y) {
        while (y != 0) {
            int r = x % y;
            x = y;
            y = r;
        }
        return x;
    }

    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int b = args.length > 1 ? Integer.parseInt(args[1]) : 0;
        int c = args.length > 2 ? Integer.parseInt(args[2]) : 0;
        int x = Math.abs(a) + 1;
        int y = Math.abs(b) + 2;
        int z = Math.abs(c) + 3;
        int g = gcd(x * z, y * z);
        int l = x / gcd(x, y) * y;
        System.out.println("gcd=" + g);
        System.out.println("lcm=" + l);
    }
}
