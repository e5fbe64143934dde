/* Double precision, column-major nested loops: successive inner
 * iterations are a full row apart in memory. */
#include "graybench.h"

void convert(int width, int height, const unsigned char *rgb,
             unsigned char *gray)
{
    int x, y;

    for (x = 0; x < width; x++) {
        for (y = 0; y < height; y++) {
            const unsigned char *p = rgb + 3 * ((long)y * width + x);
            double v = 0.3 * p[0] + 0.59 * p[1] + 0.11 * p[2];
            if (v < 0.0)
                v = 0.0;
            if (v > 255.0)
                v = 255.0;
            gray[(long)y * width + x] = (unsigned char)v;
        }
    }
}
