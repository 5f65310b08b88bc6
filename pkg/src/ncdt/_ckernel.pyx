# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled order-ideal counter.

Same contract as :func:`ncdt._pykernel.count_from`; see that module for the
algorithm.  The search itself runs without the GIL so that several prefix
subtrees can be counted concurrently from a thread pool.
"""

from libc.stdlib cimport malloc, free


cdef void _dfs(int n, const int* parent_count, const int* child_ptr,
               const int* child_idx, const int* colour,
               const int* members, int n_members,
               const int* frontier, int n_frontier,
               int max_size, long long* counts) noexcept nogil:
    cdef int W = max_size + 1
    cdef int* need = <int*> malloc(n * sizeof(int))
    cdef int* fr = <int*> malloc((max_size + 2) * (n + 1) * sizeof(int))
    cdef int* flen = <int*> malloc((max_size + 2) * sizeof(int))
    cdef int* pos = <int*> malloc((max_size + 2) * sizeof(int))
    cdef int* chosen = <int*> malloc((max_size + 2) * sizeof(int))
    cdef int i, j, c, s, d, k, a, b, e, tmp
    cdef int size, w0, w1
    cdef int en[8]
    cdef int* cur
    cdef int* nxt

    for i in range(n):
        need[i] = parent_count[i]
    w0 = 0
    w1 = 0
    for i in range(n_members):
        s = members[i]
        if colour[s]:
            w1 += 1
        else:
            w0 += 1
        for j in range(child_ptr[s], child_ptr[s + 1]):
            need[child_idx[j]] -= 1
    size = n_members
    counts[w0 * W + w1] += 1

    for i in range(n_frontier):
        fr[i] = frontier[i]
    flen[0] = n_frontier
    pos[0] = 0
    d = 0

    while True:
        if pos[d] < flen[d] and size < max_size:
            cur = fr + d * (n + 1)
            s = cur[pos[d]]
            pos[d] += 1
            chosen[d] = s
            size += 1
            if colour[s]:
                w1 += 1
            else:
                w0 += 1
            # children whose last missing parent is s
            e = 0
            for j in range(child_ptr[s], child_ptr[s + 1]):
                c = child_idx[j]
                need[c] -= 1
                if need[c] == 0:
                    en[e] = c
                    e += 1
            for a in range(1, e):
                tmp = en[a]
                b = a - 1
                while b >= 0 and en[b] > tmp:
                    en[b + 1] = en[b]
                    b -= 1
                en[b + 1] = tmp
            # merge the untried tail of this frontier with the new children
            nxt = fr + (d + 1) * (n + 1)
            k = 0
            i = pos[d]
            a = 0
            while i < flen[d] or a < e:
                if a >= e or (i < flen[d] and cur[i] < en[a]):
                    nxt[k] = cur[i]
                    i += 1
                else:
                    nxt[k] = en[a]
                    a += 1
                k += 1
            flen[d + 1] = k
            pos[d + 1] = 0
            counts[w0 * W + w1] += 1
            d += 1
        else:
            if d == 0:
                break
            d -= 1
            s = chosen[d]
            size -= 1
            if colour[s]:
                w1 -= 1
            else:
                w0 -= 1
            for j in range(child_ptr[s], child_ptr[s + 1]):
                need[child_idx[j]] += 1

    free(need)
    free(fr)
    free(flen)
    free(pos)
    free(chosen)


def count_from(const int[:] parent_count, const int[:] child_ptr,
               const int[:] child_idx, const int[:] colour,
               const int[:] members, const int[:] frontier,
               int max_size, long long[:] counts):
    """Add to ``counts[w0 * (max_size + 1) + w1]`` the number of ideals of
    each weight that extend ``members`` using only ``frontier`` elements
    (and their descendants) in increasing order."""
    cdef int n = parent_count.shape[0]
    cdef int i
    if counts.shape[0] < (max_size + 1) * (max_size + 1):
        raise ValueError("counts buffer too small")
    if child_ptr.shape[0] != n + 1:
        raise ValueError("child_ptr must have length n + 1")
    for i in range(n):
        if child_ptr[i + 1] - child_ptr[i] > 8:
            raise ValueError("at most 8 children per element are supported")
    if n == 0:
        counts[0] += 1
        return
    with nogil:
        _dfs(n, &parent_count[0], &child_ptr[0],
             &child_idx[0] if child_idx.shape[0] else NULL,
             &colour[0],
             &members[0] if members.shape[0] else NULL, members.shape[0],
             &frontier[0] if frontier.shape[0] else NULL, frontier.shape[0],
             max_size, &counts[0])
