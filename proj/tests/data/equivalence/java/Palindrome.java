public class Palindrome {
    static boolean isPalindrome(int v) {
        int original = v;
        int reversed = 0;
        while (v > 0) {
            reversed = reversed * 10 + v % 10;
            v = v / 10;
        }
        return original == reversed;
    }

    public static void main(String[] args) {
        int a = args.length > 0 ? Integer.parseInt(args[0]) : 0;
        int start = Math.abs(a) * 3;
        int found = 0;
        for (int v = start; v < start + 150; v++) {
            if (isPalindrome(v)) {
                found++;
            }
        }
        System.out.println("palindromes: " + found);
    }
}
