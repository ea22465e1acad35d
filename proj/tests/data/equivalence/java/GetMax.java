public class GetMax {
    public static int getMax(int a, int b) {
        if (a > b)
            return a;
        else
            return b;
    }

    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int b = args.length > 1 ? Integer.parseInt(args[1]) : 0;
        int c = args.length > 2 ? Integer.parseInt(args[2]) : 0;
        int m = getMax(a, b);
        int n = getMax(m, c);
        System.out.println(m);
        System.out.println(n);
    }
}
