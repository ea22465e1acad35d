public class Sieve {
    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int b = args.length > 1 ? Integer.parseInt(args[1]) : 0;
        int limit = Math.abs(a * 7 + b) % 200 + 10;
        boolean[] composite = new boolean[limit + 1];
        int count = 0;
        for (int p = 2; p <= limit; p++) {
            if (!composite[p]) {
                count++;
                for (int q = p * p; q <= limit; q += p) {
                    composite[q] = true;
                }
            }
        }
        System.out.println("primes<=" + limit + ": " + count);
    }
}
