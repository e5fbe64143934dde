/* Double precision, single flattened loop over width*height pixels. */
#include "graybench.h"

void convert(int width, int height, const unsigned char *rgb,
             unsigned char *gray)
{
    long n = (long)width * height;
    long i;

    for (i = 0; i < n; i++) {
        const unsigned char *p = rgb + 3 * i;
        double v = 0.3 * p[0] + 0.59 * p[1] + 0.11 * p[2];
        if (v < 0.0)
            v = 0.0;
        if (v > 255.0)
            v = 255.0;
        gray[i] = (unsigned char)v;
    }
}
