public class BinarySearch {
    static int search(int[] data, int key) {
        int lo = 0;
        int hi = data.length - 1;
        while (lo <= hi) {
            int mid = (lo + hi) / 2;
            if (data[mid] == key) {
                return mid;
            } else if (data[mid] < key) {
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        return -1;
    }

    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int b = args.length > 1 ? Integer.parseInt(args[1]) : 0;
        int[] data = new int[20];
        for (int i = 0; i < data.length; i++) {
            data[i] = i * 3 + 1;
        }
        System.out.println(search(data, a));
        System.out.println(search(data, b * 3 + 1));
    }
}
