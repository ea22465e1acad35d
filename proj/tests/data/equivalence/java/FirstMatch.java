public class FirstMatch {
    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int b = args.length > 1 ? Integer.parseInt(args[1]) : 0;
        int target = Math.abs(a + b) % 50;
        int foundI = -1;
        int foundJ = -1;
        outer:
        for (int i = 0; i < 10; i++) {
            for (int j = 0; j < 10; j++) {
                if (i * j + i == target) {
                    foundI = i;
                    foundJ = j;
                    break outer;
                }
            }
        }
        System.out.println(target + " -> " + foundI + "," + foundJ);
    }
}
