public class Fibonacci {
    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int n = Math.abs(a) % 40 + 2;
        long prev = 0;
        long cur = 1;
        int i = 2;
        while (i <= n) {
            long next = prev + cur;
            prev = cur;
            cur = next;
            i++;
        }
        System.out.println("fib(" + n + ")=" + cur);
        long sum = 0;
        for (int k = 0; k < n; k++) {
            sum += k * k;
        }
        System.out.println("squares=" + sum);
    }
}
