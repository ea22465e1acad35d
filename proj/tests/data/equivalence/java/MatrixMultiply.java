public class MatrixMultiply {
    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int b = args.length > 1 ? Integer.parseInt(args[1]) : 0;
        int n = 3;
        int[][] x = new int[n][n];
        int[][] y = new int[n][n];
        int[][] z = new int[n][n];
        for (int i = 0; i < n; i++) {
            for (int j = 0; j < n; j++) {
                x[i][j] = a + i - j;
                y[i][j] = b * j + i;
            }
        }
        for (int i = 0; i < n; i++) {
            for (int j = 0; j < n; j++) {
                int s = 0;
                for (int k = 0; k < n; k++) {
                    s += x[i][k] * y[k][j];
                }
                z[i][j] = s;
            }
        }
        for (int i = 0; i < n; i++) {
            System.out.println(z[i][0] + " " + z[i][1] + " " + z[i][2]);
        }
    }
}
