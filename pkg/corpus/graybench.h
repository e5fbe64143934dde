/* Shared interface between the benchmark driver, the conversion variant
 * linked into it, and the POSIX image I/O unit. */
#ifndef GRAYBENCH_H
#define GRAYBENCH_H

#include <stddef.h>

/* Convert a row-major RGB buffer (3 bytes per pixel) into gray (1 byte per
 * pixel). The gray buffer is zero-filled by the driver before the call, so
 * a variant that does nothing still produces a valid, all-zero image. */
void convert(int width, int height, const unsigned char *rgb,
             unsigned char *gray);

/* Read a binary PPM (P6, maxval 255). Allocates *rgb with malloc; the
 * caller frees. Returns 0 on success, -1 on any error. */
int read_ppm(const char *path, int *width, int *height, unsigned char **rgb);

/* Write a binary PGM (P5) with the exact header "P5\n<w> <h>\n255\n".
 * Returns 0 on success, -1 on any error. */
int write_pgm(const char *path, int width, int height,
              const unsigned char *gray);

#endif
