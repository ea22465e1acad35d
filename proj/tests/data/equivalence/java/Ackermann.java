public class Ackermann {
    static int ack(int m, int n) {
        if (m == 0) {
            return n + 1;
        }
        if (n == 0) {
            return ack(m - 1, 1);
        }
        return ack(m - 1, ack(m, n - 1));
    }

    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int b = args.length > 1 ? Integer.parseInt(args[1]) : 0;
        int m = Math.abs(a) % 3;
        int n = Math.abs(b) % 4;
        System.out.println("ack(" + m + "," + n + ")=" + ack(m, n));
    }
}
