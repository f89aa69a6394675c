# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fixed-point kernels for the hot summation loops.

Operation-for-operation mirror of ``_fpkernels_py``; both backends must
return bitwise-identical integer state. See that module for the state
conventions. The win here is loop and dispatch overhead: the arithmetic
itself stays in CPython big integers.
"""

BACKEND = "compiled"


def nested_chain_advance(tuple level_pows, tuple level_ratio, tuple ratio_nums,
                         tuple ratio_dens, object S, list pvals, list rvals,
                         long t0, long t1, bint strict, bint alt, long sign0,
                         list window, long win_start):
    cdef long n = len(level_pows)
    cdef long sign = sign0
    cdef long t, i, j, k, kmax = 0, ridx, nr = len(rvals)
    cdef tuple pows, piece
    cdef object contrib, num, den, X
    for pows in level_pows:
        for piece in pows:
            if piece[0] == 0 and <long> piece[1] > kmax:
                kmax = <long> piece[1]
    cdef list pw = [0] * (kmax + 1)
    for t in range(t0, t1):
        if kmax:
            pw[1] = t
            for k in range(2, kmax + 1):
                pw[k] = pw[k - 1] * t
        if strict:
            contrib = pvals[n - 1]
            for piece in level_pows[n - 1]:
                if piece[0] == 0:
                    contrib = contrib // pw[<long> piece[1]]
                else:
                    X = piece[0] + t * S
                    contrib = contrib * piece[2] // X ** (<long> piece[1])
            pvals[n] = pvals[n] + contrib
            for i in range(n - 1, 0, -1):
                contrib = pvals[i - 1]
                for piece in level_pows[i - 1]:
                    if piece[0] == 0:
                        contrib = contrib // pw[<long> piece[1]]
                    else:
                        X = piece[0] + t * S
                        contrib = contrib * piece[2] // X ** (<long> piece[1])
                pvals[i] = pvals[i] + contrib
        else:
            for i in range(1, n + 1):
                contrib = pvals[i - 1]
                ridx = level_ratio[i - 1]
                if ridx >= 0:
                    contrib = contrib * rvals[ridx] // S
                for piece in level_pows[i - 1]:
                    if piece[0] == 0:
                        contrib = contrib // pw[<long> piece[1]]
                    else:
                        X = piece[0] + t * S
                        contrib = contrib * piece[2] // X ** (<long> piece[1])
                if i == n and alt:
                    pvals[n] = pvals[n] + sign * contrib
                else:
                    pvals[i] = pvals[i] + contrib
        if alt:
            sign = -sign
        if window is not None and t >= win_start:
            window.append(pvals[n])
        if nr:
            for j in range(nr):
                num = rvals[j]
                for A in ratio_nums[j]:
                    num = num * (A + t * S)
                den = 1
                for B in ratio_dens[j]:
                    den = den * (B + t * S)
                rvals[j] = num // den
    return sign


def weighted_chain_advance(long r, long p, object S, list svals, list tvals,
                           list accbox, long t0, long t1, bint alt, long sign0,
                           list window, long win_start):
    cdef long sign = sign0
    cdef long t, i, j
    cdef object acc = accbox[0]
    cdef object w_prev = accbox[1]
    cdef object w_last = accbox[2]
    cdef object u, W, up
    for t in range(t0, t1):
        u = t + 1
        for j in range(1, r + 1):
            tvals[j] = tvals[j] + tvals[j - 1] // u
        W = 0
        for i in range(r + 1):
            W = W + svals[r - i] * tvals[i]
        W = W // S
        w_prev = w_last
        w_last = W
        up = u ** p
        if alt:
            acc = acc + sign * (W // up)
            sign = -sign
        else:
            acc = acc + W // up
        for j in range(r, 0, -1):
            svals[j] = svals[j] + svals[j - 1] // u
        if window is not None and t >= win_start:
            window.append(acc)
    accbox[0] = acc
    accbox[1] = w_prev
    accbox[2] = w_last
    return sign
