public class Collatz {
    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int c = args.length > 2 ? Integer.parseInt(args[2]) : 0;
        long n = Math.abs(a) + Math.abs(c) + 1;
        int steps = 0;
        long peak = n;
        while (n != 1) {
            if (n % 2 == 0) {
                n = n / 2;
            } else {
                n = 3 * n + 1;
            }
            steps++;
            peak = Math.max(peak, n);
        }
        System.out.println("steps=" + steps + " peak=" + peak);
    }
}
