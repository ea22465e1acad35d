public class SafeDivide {
    static int divide(int x, int y) {
        int result;
        try {
            result = x / y;
        } catch (ArithmeticException e) {
            result = 0;
        }
        return result;
    }

    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int c = args.length > 2 ? Integer.parseInt(args[2]) : 0;
        int sum = 0;
        for (int i = -2; i <= 2; i++) {
            sum += divide(c * 10, a + i);
        }
        System.out.println("sum=" + sum);
    }
}
