public class InsertionSort {
    public static void main(String[] args) {
        int b = args.length > 1 ? Integer.parseInt(args[1]) : 0;
        int c = args.length > 2 ? Integer.parseInt(args[2]) : 0;
        int n = 9;
        int[] data = new int[n];
        for (int i = 0; i < n; i++) {
            data[i] = (i * b + c * 13) % 23;
        }
        for (int i = 1; i < n; i++) {
            int key = data[i];
            int j = i - 1;
            while (j >= 0 && data[j] > key) {
                data[j + 1] = data[j];
                j = j - 1;
            }
            data[j + 1] = key;
        }
        String s = "";
        for (int i = 0; i < n; i++) {
            s += data[i] + ",";
        }
        System.out.println(s);
    }
}
