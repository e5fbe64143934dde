/* Image I/O using POSIX functions: whole-file read and write. */
#include <fcntl.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <sys/stat.h>
#include <unistd.h>

#include "graybench.h"

static int is_space(int c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
}

/* Skip whitespace and '#' comment lines; returns new position or -1. */
static long skip_space(const unsigned char *buf, long pos, long size)
{
    while (pos < size) {
        if (is_space(buf[pos])) {
            pos++;
        } else if (buf[pos] == '#') {
            while (pos < size && buf[pos] != '\n')
                pos++;
        } else {
            break;
        }
    }
    return pos < size ? pos : -1;
}

static long parse_int(const unsigned char *buf, long pos, long size, int *out)
{
    long v = 0;
    long start;

    pos = skip_space(buf, pos, size);
    if (pos < 0)
        return -1;
    start = pos;
    while (pos < size && buf[pos] >= '0' && buf[pos] <= '9') {
        v = v * 10 + (buf[pos] - '0');
        if (v > 1L << 30)
            return -1;
        pos++;
    }
    if (pos == start)
        return -1;
    *out = (int)v;
    return pos;
}

static unsigned char *read_whole_file(const char *path, long *size)
{
    int fd;
    struct stat st;
    unsigned char *buf;
    long got = 0;

    fd = open(path, O_RDONLY);
    if (fd < 0)
        return NULL;
    if (fstat(fd, &st) != 0 || st.st_size < 0) {
        close(fd);
        return NULL;
    }
    buf = malloc(st.st_size > 0 ? (size_t)st.st_size : 1);
    if (buf == NULL) {
        close(fd);
        return NULL;
    }
    while (got < st.st_size) {
        ssize_t n = read(fd, buf + got, (size_t)(st.st_size - got));
        if (n <= 0) {
            free(buf);
            close(fd);
            return NULL;
        }
        got += n;
    }
    close(fd);
    *size = got;
    return buf;
}

int read_ppm(const char *path, int *width, int *height, unsigned char **rgb)
{
    unsigned char *buf;
    long size, pos;
    int maxval;
    long need;

    buf = read_whole_file(path, &size);
    if (buf == NULL)
        return -1;
    pos = skip_space(buf, 0, size);
    if (pos < 0 || size - pos < 2 || buf[pos] != 'P' || buf[pos + 1] != '6')
        goto fail;
    pos = parse_int(buf, pos + 2, size, width);
    if (pos < 0)
        goto fail;
    pos = parse_int(buf, pos, size, height);
    if (pos < 0)
        goto fail;
    pos = parse_int(buf, pos, size, &maxval);
    if (pos < 0 || maxval != 255 || *width < 1 || *height < 1)
        goto fail;
    if (pos >= size || !is_space(buf[pos]))
        goto fail;
    pos++; /* single whitespace byte terminates the header */
    need = 3L * *width * *height;
    if (size - pos < need)
        goto fail;
    *rgb = malloc((size_t)need);
    if (*rgb == NULL)
        goto fail;
    memcpy(*rgb, buf + pos, (size_t)need);
    free(buf);
    return 0;
fail:
    free(buf);
    return -1;
}

int write_pgm(const char *path, int width, int height,
              const unsigned char *gray)
{
    char header[64];
    int fd, len;
    long need = (long)width * height;
    long done = 0;

    len = snprintf(header, sizeof header, "P5\n%d %d\n255\n", width, height);
    if (len < 0 || len >= (int)sizeof header)
        return -1;
    fd = open(path, O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd < 0)
        return -1;
    if (write(fd, header, (size_t)len) != len) {
        close(fd);
        return -1;
    }
    while (done < need) {
        ssize_t n = write(fd, gray + done, (size_t)(need - done));
        if (n <= 0) {
            close(fd);
            return -1;
        }
        done += n;
    }
    return close(fd) == 0 ? 0 : -1;
}
