public class Palindrome {
    static boolean isPalindrome(String text) {
        int left = 0;
        int right = text.length() - 1;
        boolean ok = true;
        while (left < right) {
            char a = text.charAt(left);
            char b = text.charAt(right);
            if (a != b) {
                ok = false;
                break;
            }
            left++;
            right--;
        }
        return ok;
    }
}
