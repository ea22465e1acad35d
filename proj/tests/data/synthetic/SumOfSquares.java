public class SumOfSquares {
    static int sumSquares(int[] values, int limit) {
        int total = 0;
        int count = 0;
        for (int i = 0; i < values.length; i++) {
            int v = values[i];
            if (v > limit) {
                continue;
            }
            total = total + v * v;
            count++;
        }
        int bonus = count * 2;
        total += bonus;
        return total;
    }
}
