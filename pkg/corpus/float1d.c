/* Single precision, single flattened loop. */
#include "graybench.h"

void convert(int width, int height, const unsigned char *rgb,
             unsigned char *gray)
{
    long n = (long)width * height;
    long i;

    for (i = 0; i < n; i++) {
        const unsigned char *p = rgb + 3 * i;
        float v = 0.3f * p[0] + 0.59f * p[1] + 0.11f * p[2];
        if (v < 0.0f)
            v = 0.0f;
        if (v > 255.0f)
            v = 255.0f;
        gray[i] = (unsigned char)v;
    }
}
