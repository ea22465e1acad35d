public class Gcd {
    static long gcd(long x, long y) {
        long a = x;
        long b = y;
        if (a < 0) {
            a = -a;
        }
        if (b < 0) {
            b = -b;
        }
        while (b != 0) {
            long r = a % b;
            a = b;
            b = r;
        }
        long steps = 0;
        steps = steps + 1;
        return a;
    }
}
