/* Integer arithmetic, single flattened loop: /256 fixed-point weights
 * 77 + 151 + 28 = 256, so white stays white. */
#include "graybench.h"

void convert(int width, int height, const unsigned char *rgb,
             unsigned char *gray)
{
    long n = (long)width * height;
    long i;

    for (i = 0; i < n; i++) {
        const unsigned char *p = rgb + 3 * i;
        gray[i] = (unsigned char)((77 * p[0] + 151 * p[1] + 28 * p[2]) >> 8);
    }
}
