#include <stdio.h>
#include <stdlib.h>

struct point {
    int x;
    int y;
};

int manhattan(struct point p, struct point q) {
    int dx = p.x - q.x;
    int dy = p.y - q.y;
    if (dx < 0)
        dx = -dx;
    if (dy < 0)
        dy = -dy;
    return dx + dy;
}

int main(int argc, char **argv) {
    int a = argc > 1 ? atoi(argv[1]) : 0;
    int b = argc > 2 ? atoi(argv[2]) : 0;
    int c = argc > 3 ? atoi(argv[3]) : 0;
    struct point p;
    struct point q;
    p.x = a;
    p.y = b;
    q.x = c;
    q.y = a - b;
    struct point *r = &q;
    r->x += 1;
    printf("%d\n", manhattan(p, q));
    return 0;
}
