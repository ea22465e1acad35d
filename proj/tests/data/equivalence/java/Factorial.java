public class Factorial {
    static long fact(int n) {
        if (n <= 1) {
            return 1;
        }
        return n * fact(n - 1);
    }

    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int n = Math.abs(a) % 20;
        long f = fact(n);
        long g = 1;
        for (int i = 2; i <= n; i++) {
            g = g * i;
        }
        System.out.println(n + "! = " + f);
        System.out.println(f == g);
    }
}
