# cython: boundscheck=False, wraparound=False, cdivision=True
"""Breadth-first closure of n x n matrices over Z/m under right multiplication.

Matrices are bit-packed into 64-bit codes (entries row-major, each in a
fixed-width field), so the whole frontier lives in flat C arrays.  The caller
guarantees n*n*bits(m-1) <= 63; anything larger goes to the pure-Python
fallback instead.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc

cdef uint64_t EMPTY = <uint64_t> - 1


cdef inline uint64_t mix(uint64_t x) nogil:
    # splitmix64 finalizer
    x += <uint64_t>0x9E3779B97F4A7C15
    x = (x ^ (x >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    x = (x ^ (x >> 27)) * <uint64_t>0x94D049BB133111EB
    return x ^ (x >> 31)


cdef struct U64Set:
    uint64_t *slots
    size_t cap          # power of two
    size_t size


cdef int set_init(U64Set *s, size_t cap) except -1:
    cdef size_t i
    s.slots = <uint64_t *>malloc(cap * sizeof(uint64_t))
    if s.slots == NULL:
        raise MemoryError()
    for i in range(cap):
        s.slots[i] = EMPTY
    s.cap = cap
    s.size = 0
    return 0


cdef int set_grow(U64Set *s) except -1:
    cdef U64Set bigger
    cdef size_t i, j, mask
    set_init(&bigger, s.cap * 2)
    mask = bigger.cap - 1
    for i in range(s.cap):
        if s.slots[i] != EMPTY:
            j = mix(s.slots[i]) & mask
            while bigger.slots[j] != EMPTY:
                j = (j + 1) & mask
            bigger.slots[j] = s.slots[i]
    bigger.size = s.size
    free(s.slots)
    s[0] = bigger
    return 0


cdef inline int set_add(U64Set *s, uint64_t code) except -1:
    """Insert code; 1 if new, 0 if already present."""
    cdef size_t j = mix(code) & (s.cap - 1)
    while s.slots[j] != EMPTY:
        if s.slots[j] == code:
            return 0
        j = (j + 1) & (s.cap - 1)
    s.slots[j] = code
    s.size += 1
    if s.size * 10 >= s.cap * 7:
        set_grow(s)
    return 1


def bfs_closure_u64(list gens, int n, unsigned long long m, long long cap,
                    bint keep_elements):
    """Close the identity under right multiplication by the generators.

    gens: list of flat tuples (length n*n, entries already reduced mod m).
    Returns (order, truncated, elements or None); elements come back as flat
    tuples in discovery order (callers sort for a canonical listing).
    """
    cdef int bits = 0
    cdef unsigned long long t = m - 1
    cdef int nn = n * n
    cdef uint64_t mask
    cdef int ngens = len(gens)
    cdef int i, j, k, g
    cdef long long idx
    cdef uint64_t code, prod_code
    cdef long long head, tail, qcap
    cdef unsigned long long acc
    cdef bint truncated = False
    cdef unsigned long long *gen_entries = NULL
    cdef unsigned long long *cur = NULL
    cdef unsigned long long *out = NULL
    cdef uint64_t *queue = NULL
    cdef uint64_t *bigger_q = NULL
    cdef U64Set seen
    seen.slots = NULL

    while t:
        bits += 1
        t >>= 1
    if bits == 0:
        bits = 1
    if nn * bits > 63:
        raise ValueError("matrix does not fit in a 64-bit code")
    mask = (<uint64_t>1 << bits) - 1

    try:
        gen_entries = <unsigned long long *>malloc(
            ngens * nn * sizeof(unsigned long long))
        cur = <unsigned long long *>malloc(nn * sizeof(unsigned long long))
        out = <unsigned long long *>malloc(nn * sizeof(unsigned long long))
        qcap = 1024
        queue = <uint64_t *>malloc(qcap * sizeof(uint64_t))
        if gen_entries == NULL or cur == NULL or out == NULL or queue == NULL:
            raise MemoryError()
        for g in range(ngens):
            row = gens[g]
            for i in range(nn):
                gen_entries[g * nn + i] = row[i] % m

        set_init(&seen, 1024)

        code = 0
        for i in range(n):
            code |= (<uint64_t>(1 % m)) << (bits * (i * n + i))
        set_add(&seen, code)
        queue[0] = code
        head = 0
        tail = 1

        while head < tail:
            code = queue[head]
            head += 1
            for i in range(nn):
                cur[i] = <unsigned long long>((code >> (bits * i)) & mask)
            for g in range(ngens):
                prod_code = 0
                for i in range(n):
                    for j in range(n):
                        acc = 0
                        for k in range(n):
                            acc += cur[i * n + k] * gen_entries[g * nn + k * n + j]
                        out[i * n + j] = acc % m
                for i in range(nn):
                    prod_code |= (<uint64_t>out[i]) << (bits * i)
                if set_add(&seen, prod_code):
                    if <long long>seen.size > cap:
                        truncated = True
                        break
                    if tail == qcap:
                        qcap *= 2
                        bigger_q = <uint64_t *>malloc(qcap * sizeof(uint64_t))
                        if bigger_q == NULL:
                            raise MemoryError()
                        for idx in range(tail):
                            bigger_q[idx] = queue[idx]
                        free(queue)
                        queue = bigger_q
                    queue[tail] = prod_code
                    tail += 1
            if truncated:
                break

        order = int(seen.size)
        elements = None
        if keep_elements and not truncated:
            elements = []
            for idx in range(tail):
                code = queue[idx]
                elements.append(tuple(
                    int((code >> (bits * i)) & mask) for i in range(nn)))
        return order, bool(truncated), elements
    finally:
        if gen_entries != NULL:
            free(gen_entries)
        if cur != NULL:
            free(cur)
        if out != NULL:
            free(out)
        if queue != NULL:
            free(queue)
        if seen.slots != NULL:
            free(seen.slots)
