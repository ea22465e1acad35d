public class DivideChecked {
    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int b = args.length > 1 ? Integer.parseInt(args[1]) : 0;
        int total = b * 10;
        System.out.println("start " + total);
        int q = total / a;
        int r = total % a;
        System.out.println(q + " r " + r);
    }
}
