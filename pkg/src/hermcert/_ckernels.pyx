# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot loops. Same API and results as ``_pykernels``."""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from libc.string cimport memcpy

DEF KEEP = 255
DEF CANCEL = 254

IMPLEMENTATION = "cython"


cdef inline bytes _mul(const unsigned char* a, Py_ssize_t la,
                       const unsigned char* b, Py_ssize_t lb,
                       const unsigned char* merge, Py_ssize_t L):
    cdef Py_ssize_t i = la, j = 0
    cdef unsigned char r
    cdef bytes out
    cdef char* p
    while i > 0 and j < lb:
        r = merge[a[i - 1] * L + b[j]]
        if r == CANCEL:
            i -= 1
            j += 1
        elif r == KEEP:
            break
        else:
            out = PyBytes_FromStringAndSize(NULL, i + lb - j - 1)
            p = PyBytes_AS_STRING(out)
            memcpy(p, a, i - 1)
            p[i - 1] = <char>r
            memcpy(p + i, b + j + 1, lb - j - 1)
            return out
    out = PyBytes_FromStringAndSize(NULL, i + lb - j)
    p = PyBytes_AS_STRING(out)
    memcpy(p, a, i)
    memcpy(p + i, b + j, lb - j)
    return out


def word_mul(bytes a, bytes b, bytes merge, Py_ssize_t nletters):
    return _mul(<const unsigned char*>PyBytes_AS_STRING(a), len(a),
                <const unsigned char*>PyBytes_AS_STRING(b), len(b),
                <const unsigned char*>PyBytes_AS_STRING(merge), nletters)


def word_inv(bytes a, bytes inv):
    cdef Py_ssize_t n = len(a), k
    cdef const unsigned char* src = <const unsigned char*>PyBytes_AS_STRING(a)
    cdef const unsigned char* tab = <const unsigned char*>PyBytes_AS_STRING(inv)
    cdef bytes out = PyBytes_FromStringAndSize(NULL, n)
    cdef char* p = PyBytes_AS_STRING(out)
    for k in range(n):
        p[k] = <char>tab[src[n - 1 - k]]
    return out


def expand_words(list frontier, list gens, set seen, bytes merge, Py_ssize_t nletters):
    cdef list out = []
    cdef bytes g, s, h
    cdef const unsigned char* m = <const unsigned char*>PyBytes_AS_STRING(merge)
    for g in frontier:
        for s in gens:
            h = _mul(<const unsigned char*>PyBytes_AS_STRING(g), len(g),
                     <const unsigned char*>PyBytes_AS_STRING(s), len(s), m, nletters)
            if h not in seen:
                seen.add(h)
                out.append(h)
    return out


def expand_table(list frontier, list gens, set seen, const int[:] flat, Py_ssize_t order):
    cdef list out = []
    cdef Py_ssize_t g, s, row
    cdef object h
    cdef list cgens = [int(x) for x in gens]
    for obj in frontier:
        g = obj
        row = g * order
        for s in cgens:
            h = flat[row + s]
            if h not in seen:
                seen.add(h)
                out.append(h)
    return out


def expand_generic(list frontier, list gens, set seen, mul):
    cdef list out = []
    for g in frontier:
        for s in gens:
            h = mul(g, s)
            if h not in seen:
                seen.add(h)
                out.append(h)
    return out


def convolve_words(dict x, dict y, bytes merge, Py_ssize_t nletters):
    cdef dict acc = {}
    cdef list yitems = list(y.items())
    cdef bytes g, h, k
    cdef const unsigned char* m = <const unsigned char*>PyBytes_AS_STRING(merge)
    cdef object a, b, prev
    for g, a in x.items():
        for h, b in yitems:
            k = _mul(<const unsigned char*>PyBytes_AS_STRING(g), len(g),
                     <const unsigned char*>PyBytes_AS_STRING(h), len(h), m, nletters)
            prev = acc.get(k)
            acc[k] = a * b if prev is None else prev + a * b
    return {k2: v for k2, v in acc.items() if v}


def convolve_table(dict x, dict y, const int[:] flat, Py_ssize_t order):
    cdef dict acc = {}
    cdef list yitems = list(y.items())
    cdef Py_ssize_t g, h, row
    cdef object k, a, b, prev
    for gobj, a in x.items():
        g = gobj
        row = g * order
        for hobj, b in yitems:
            h = hobj
            k = flat[row + h]
            prev = acc.get(k)
            acc[k] = a * b if prev is None else prev + a * b
    return {k2: v for k2, v in acc.items() if v}


def convolve_generic(dict x, dict y, mul):
    cdef dict acc = {}
    cdef list yitems = list(y.items())
    cdef object prev
    for g, a in x.items():
        for h, b in yitems:
            k = mul(g, h)
            prev = acc.get(k)
            acc[k] = a * b if prev is None else prev + a * b
    return {k2: v for k2, v in acc.items() if v}
