public class MinMax {
    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int b = args.length > 1 ? Integer.parseInt(args[1]) : 0;
        int c = args.length > 2 ? Integer.parseInt(args[2]) : 0;
        int[] v = {a, b, c, a - b, b - c, c * 2};
        int max = v[0];
        int min = v[0];
        int total = 0;
        for (int i = 0; i < v.length; i++) {
            if (v[i] > max) {
                max = v[i];
            }
            if (v[i] < min) {
                min = v[i];
            }
            total += v[i];
        }
        double mean = total / (double) v.length;
        System.out.println(min + " " + max + " " + mean);
    }
}
