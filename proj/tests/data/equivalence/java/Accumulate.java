public class Accumulate {
    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int b = args.length > 1 ? Integer.parseInt(args[1]) : 0;
        int c = args.length > 2 ? Integer.parseInt(args[2]) : 0;
        double x = a;
        double y = b + 0.5;
        long z = c;
        x += y;
        y *= 2;
        z -= a;
        x = x * 1.5;
        z = z + b;
        y = y - x;
        z *= 3;
        int w = 7;
        w += 2;
        w -= c;
        System.out.println(x + " " + y + " " + z + " " + w);
    }
}
