public class Caesar {
    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int shift = Math.abs(a) % 26;
        String text = "transformcode";
        char[] out = new char[text.length()];
        for (int i = 0; i < text.length(); i++) {
            char ch = text.charAt(i);
            int idx = ch - 'a';
            idx = (idx + shift) % 26;
            out[i] = (char) ('a' + idx);
        }
        System.out.println(new String(out));
    }
}
