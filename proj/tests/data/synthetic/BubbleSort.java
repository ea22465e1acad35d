public class BubbleSort {
    static void sort(int[] data) {
        int n = data.length;
        boolean swapped = true;
        int pass = 0;
        while (swapped) {
            swapped = false;
            for (int j = 0; j < n - 1 - pass; j++) {
                if (data[j] > data[j + 1]) {
                    int tmp = data[j];
                    data[j] = data[j + 1];
                    data[j + 1] = tmp;
                    swapped = true;
                }
            }
            pass++;
        }
    }
}
