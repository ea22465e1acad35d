public class Triangle {
    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int rows = Math.abs(a) % 6 + 1;
        int stars = 0;
        for (int r = 1; r <= rows; r++) {
            StringBuilder line = new StringBuilder();
            for (int k = 0; k < r; k++) {
                if (k % 2 == 1) {
                    line.append('.');
                    continue;
                }
                line.append('*');
                stars++;
            }
            System.out.println(line);
        }
        System.out.println(stars);
    }
}
