# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled lattice kernels; mirrors ``_pykernels`` exactly in signature."""
from libc.math cimport exp, log, INFINITY
from libc.stdint cimport int32_t, int64_t
from libc.stdlib cimport free, malloc


cdef inline double _lse(const double* v, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i
    cdef double m = v[0]
    cdef double acc = 0.0
    for i in range(1, n):
        if v[i] > m:
            m = v[i]
    if m == -INFINITY or m == INFINITY or m != m:
        return m
    for i in range(n):
        acc += exp(v[i] - m)
    return m + log(acc)


cdef void _transitions(const double[::1] w, int L, Py_ssize_t n_feat, int n_trans,
                       double* A) noexcept nogil:
    cdef Py_ssize_t off = n_feat * L
    cdef int k, i
    for i in range(L * L):
        A[i] = 0.0
    for k in range(n_trans):
        for i in range(L * L):
            A[i] += w[off + k * L * L + i]


cdef void _emissions(const double[::1] w, int L, Py_ssize_t p0, Py_ssize_t T,
                     const int64_t[::1] feat_ptr, const int32_t[::1] feat_ids,
                     double* E) noexcept nogil:
    cdef Py_ssize_t t, k
    cdef int y
    cdef int64_t f
    for t in range(T):
        for y in range(L):
            E[t * L + y] = 0.0
        for k in range(feat_ptr[p0 + t], feat_ptr[p0 + t + 1]):
            f = feat_ids[k]
            for y in range(L):
                E[t * L + y] += w[f * L + y]


cdef double _sentence(const double[::1] w, int L, const double* A,
                      Py_ssize_t p0, Py_ssize_t T,
                      const int64_t[::1] feat_ptr, const int32_t[::1] feat_ids,
                      const int32_t[::1] gold, double[::1] grad, double* edge,
                      double* E, double* alpha, double* beta, double* tmp) noexcept nogil:
    cdef Py_ssize_t t, k
    cdef int p, c, y
    cdef int64_t f
    cdef double logZ, score, g

    _emissions(w, L, p0, T, feat_ptr, feat_ids, E)

    for y in range(L):
        alpha[y] = E[y]
    for t in range(1, T):
        for c in range(L):
            for p in range(L):
                tmp[p] = alpha[(t - 1) * L + p] + A[p * L + c]
            alpha[t * L + c] = E[t * L + c] + _lse(tmp, L)
    logZ = _lse(alpha + (T - 1) * L, L)

    for y in range(L):
        beta[(T - 1) * L + y] = 0.0
    for t in range(T - 2, -1, -1):
        for p in range(L):
            for c in range(L):
                tmp[c] = A[p * L + c] + E[(t + 1) * L + c] + beta[(t + 1) * L + c]
            beta[t * L + p] = _lse(tmp, L)

    score = E[gold[p0]]
    for t in range(1, T):
        score += E[t * L + gold[p0 + t]] + A[gold[p0 + t - 1] * L + gold[p0 + t]]

    for t in range(T):
        for y in range(L):
            tmp[y] = exp(alpha[t * L + y] + beta[t * L + y] - logZ)
        tmp[gold[p0 + t]] -= 1.0
        for k in range(feat_ptr[p0 + t], feat_ptr[p0 + t + 1]):
            f = feat_ids[k]
            for y in range(L):
                grad[f * L + y] += tmp[y]

    for t in range(1, T):
        for p in range(L):
            g = alpha[(t - 1) * L + p] - logZ
            for c in range(L):
                edge[p * L + c] += exp(g + A[p * L + c] + E[t * L + c] + beta[t * L + c])
        edge[gold[p0 + t - 1] * L + gold[p0 + t]] -= 1.0

    return logZ - score


def nll_grad(const double[::1] w, int L, Py_ssize_t n_feat, int n_trans,
             const int64_t[::1] sent_ptr, const int64_t[::1] feat_ptr,
             const int32_t[::1] feat_ids, const int32_t[::1] gold,
             Py_ssize_t lo, Py_ssize_t hi, double[::1] grad, double[::1] sent_nll):
    """Accumulate the data term of the NLL gradient for sentences ``lo..hi-1`` into ``grad``."""
    cdef Py_ssize_t s, i, max_T = 0
    cdef Py_ssize_t off = n_feat * L
    cdef int k
    for s in range(lo, hi):
        if sent_ptr[s + 1] - sent_ptr[s] > max_T:
            max_T = sent_ptr[s + 1] - sent_ptr[s]
    if max_T == 0:
        return
    cdef double* A = <double*> malloc(L * L * sizeof(double))
    cdef double* edge = <double*> malloc(L * L * sizeof(double))
    cdef double* tmp = <double*> malloc(L * sizeof(double))
    cdef double* E = <double*> malloc(max_T * L * sizeof(double))
    cdef double* alpha = <double*> malloc(max_T * L * sizeof(double))
    cdef double* beta = <double*> malloc(max_T * L * sizeof(double))
    if not (A and edge and tmp and E and alpha and beta):
        free(A); free(edge); free(tmp); free(E); free(alpha); free(beta)
        raise MemoryError()
    try:
        with nogil:
            _transitions(w, L, n_feat, n_trans, A)
            for i in range(L * L):
                edge[i] = 0.0
            for s in range(lo, hi):
                sent_nll[s] = _sentence(w, L, A, sent_ptr[s], sent_ptr[s + 1] - sent_ptr[s],
                                        feat_ptr, feat_ids, gold, grad, edge,
                                        E, alpha, beta, tmp)
            for k in range(n_trans):
                for i in range(L * L):
                    grad[off + k * L * L + i] += edge[i]
    finally:
        free(A); free(edge); free(tmp); free(E); free(alpha); free(beta)


def viterbi(const double[::1] w, int L, Py_ssize_t n_feat, int n_trans,
            const int64_t[::1] feat_ptr, const int32_t[::1] feat_ids, int32_t[::1] out):
    """Best label path; ties go to the lowest label index."""
    cdef Py_ssize_t T = feat_ptr.shape[0] - 1
    cdef Py_ssize_t t
    cdef int p, c, best
    cdef double v, bv
    if T <= 0:
        return
    cdef double* A = <double*> malloc(L * L * sizeof(double))
    cdef double* E = <double*> malloc(T * L * sizeof(double))
    cdef double* delta = <double*> malloc(T * L * sizeof(double))
    cdef int* back = <int*> malloc(T * L * sizeof(int))
    if not (A and E and delta and back):
        free(A); free(E); free(delta); free(back)
        raise MemoryError()
    try:
        with nogil:
            _transitions(w, L, n_feat, n_trans, A)
            # feat_ptr here holds absolute offsets into feat_ids for this sentence
            _emissions(w, L, 0, T, feat_ptr, feat_ids, E)
            for c in range(L):
                delta[c] = E[c]
            for t in range(1, T):
                for c in range(L):
                    best = 0
                    bv = delta[(t - 1) * L] + A[c]
                    for p in range(1, L):
                        v = delta[(t - 1) * L + p] + A[p * L + c]
                        if v > bv:
                            bv = v
                            best = p
                    delta[t * L + c] = E[t * L + c] + bv
                    back[t * L + c] = best
            best = 0
            for c in range(1, L):
                if delta[(T - 1) * L + c] > delta[(T - 1) * L + best]:
                    best = c
            for t in range(T - 1, 0, -1):
                out[t] = best
                best = back[t * L + best]
            out[0] = best
    finally:
        free(A); free(E); free(delta); free(back)
