public class ReverseWords {
    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int n = Math.abs(a) % 8 + 2;
        StringBuilder sb = new StringBuilder();
        for (int i = 0; i < n; i++) {
            char ch = (char) ('a' + (i * 5 + a) % 26 + (a < 0 ? 26 : 0) % 26);
            sb.append(ch);
        }
        String word = sb.toString();
        String rev = "";
        for (int i = word.length() - 1; i >= 0; i--) {
            rev = rev + word.charAt(i);
        }
        System.out.println(word + " -> " + rev);
    }
}
