/* Benchmark driver: read PPM, convert, write PGM.
 *
 * Interface: first positional argument is the input file, second is the
 * output file. Exit status 0 on success, 1 on any failure.
 */
#include <stdio.h>
#include <stdlib.h>

#include "graybench.h"

int main(int argc, char **argv)
{
    int width, height;
    unsigned char *rgb;
    unsigned char *gray;

    if (argc != 3) {
        fprintf(stderr, "usage: %s input.ppm output.pgm\n", argv[0]);
        return 1;
    }
    if (read_ppm(argv[1], &width, &height, &rgb) != 0) {
        fprintf(stderr, "%s: cannot read %s\n", argv[0], argv[1]);
        return 1;
    }
    gray = calloc((size_t)width * (size_t)height, 1);
    if (gray == NULL) {
        fprintf(stderr, "%s: out of memory\n", argv[0]);
        free(rgb);
        return 1;
    }
    convert(width, height, rgb, gray);
    if (write_pgm(argv[2], width, height, gray) != 0) {
        fprintf(stderr, "%s: cannot write %s\n", argv[0], argv[2]);
        free(gray);
        free(rgb);
        return 1;
    }
    free(gray);
    free(rgb);
    return 0;
}
