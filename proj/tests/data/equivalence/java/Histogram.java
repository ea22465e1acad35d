public class Histogram {
    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int b = args.length > 1 ? Integer.parseInt(args[1]) : 0;
        int[] bins = new int[5];
        int x = Math.abs(a) + 1;
        int y = Math.abs(b) + 3;
        for (int i = 0; i < 40; i++) {
            x = (x * 17 + y) % 97;
            bins[x % 5]++;
        }
        for (int i = 0; i < bins.length; i++) {
            System.out.println(i + ": " + bins[i]);
        }
    }
}
