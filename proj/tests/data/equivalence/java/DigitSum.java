public class DigitSum {
    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int b = args.length > 1 ? Integer.parseInt(args[1]) : 0;
        int n = Math.abs(a * 1000 + b * 37);
        int sum = 0;
        int digits = 0;
        int rev = 0;
        while (n > 0) {
            int d = n % 10;
            sum += d;
            rev = rev * 10 + d;
            digits++;
            n /= 10;
        }
        System.out.println(sum + " " + digits + " " + rev);
    }
}
