public class Weekday {
    static String name(int d) {
        String s;
        switch (d) {
            case 0:
                s = "Sun";
                break;
            case 1:
                s = "Mon";
                break;
            case 2:
                s = "Tue";
                break;
            case 3:
                s = "Wed";
                break;
            default:
                s = "Late";
                break;
        }
        return s;
    }

    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int b = args.length > 1 ? Integer.parseInt(args[1]) : 0;
        for (int i = 0; i < 4; i++) {
            int d = Math.abs(a + b * i) % 7;
            System.out.println(i + " " + name(d));
        }
    }
}
