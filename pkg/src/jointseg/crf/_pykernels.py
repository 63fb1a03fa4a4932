"""Pure numpy implementation of the lattice kernels.

Same signatures as the compiled ``_ckernels`` module. Weight layout: unigram
feature ``f`` and label ``y`` live at ``f * L + y``; transition template
``k`` and label pair ``(p, c)`` at ``n_feat * L + k * L * L + p * L + c``.
"""
import numpy as np


def _lse(a, axis):
    m = np.max(a, axis=axis, keepdims=True)
    m = np.where(np.isfinite(m), m, 0.0)
    return np.squeeze(m, axis=axis) + np.log(np.sum(np.exp(a - m), axis=axis))


def transition_matrix(w, L, n_feat, n_trans):
    off = n_feat * L
    blocks = np.asarray(w[off : off + n_trans * L * L]).reshape(n_trans, L, L)
    return blocks.sum(axis=0) if n_trans else np.zeros((L, L))


def emissions(w, L, n_feat, feat_ptr, feat_ids):
    T = len(feat_ptr) - 1
    W = np.asarray(w[: n_feat * L]).reshape(n_feat, L)
    counts = np.diff(feat_ptr)
    rows = np.repeat(np.arange(T), counts)
    E = np.zeros((T, L))
    ids = np.asarray(feat_ids[feat_ptr[0] : feat_ptr[-1]])
    np.add.at(E, rows, W[ids])
    return E


def forward_backward(E, A):
    """Return ``(log_alpha, log_beta, log_Z)`` for emissions ``E`` (T x L) and transitions ``A``."""
    T, L = E.shape
    alpha = np.empty((T, L))
    beta = np.zeros((T, L))
    alpha[0] = E[0]
    for t in range(1, T):
        alpha[t] = E[t] + _lse(alpha[t - 1][:, None] + A, axis=0)
    for t in range(T - 2, -1, -1):
        beta[t] = _lse(A + (E[t + 1] + beta[t + 1])[None, :], axis=1)
    return alpha, beta, _lse(alpha[-1], axis=0)


def nll_grad(w, L, n_feat, n_trans, sent_ptr, feat_ptr, feat_ids, gold, lo, hi, grad, sent_nll):
    """Accumulate the data term of the NLL gradient for sentences ``lo..hi-1`` into ``grad``."""
    with np.errstate(invalid="ignore", over="ignore"):
        _nll_grad(w, L, n_feat, n_trans, sent_ptr, feat_ptr, feat_ids, gold, lo, hi, grad, sent_nll)


def _nll_grad(w, L, n_feat, n_trans, sent_ptr, feat_ptr, feat_ids, gold, lo, hi, grad, sent_nll):
    A = transition_matrix(w, L, n_feat, n_trans)
    gW = grad[: n_feat * L].reshape(n_feat, L)
    edge_total = np.zeros((L, L))
    for s in range(lo, hi):
        p0, p1 = sent_ptr[s], sent_ptr[s + 1]
        T = p1 - p0
        fp = feat_ptr[p0 : p1 + 1]
        E = emissions(w, L, n_feat, fp, feat_ids)
        y = np.asarray(gold[p0:p1])
        alpha, beta, logZ = forward_backward(E, A)
        score = E[np.arange(T), y].sum() + A[y[:-1], y[1:]].sum()
        sent_nll[s] = logZ - score

        P = np.exp(alpha + beta - logZ)
        P[np.arange(T), y] -= 1.0
        rows = np.repeat(np.arange(T), np.diff(fp))
        np.add.at(gW, np.asarray(feat_ids[fp[0] : fp[-1]]), P[rows])

        if T > 1:
            xi = alpha[:-1, :, None] + A[None, :, :] + (E[1:] + beta[1:])[:, None, :] - logZ
            edge_total += np.exp(xi).sum(axis=0)
            np.add.at(edge_total, (y[:-1], y[1:]), -1.0)
    off = n_feat * L
    for k in range(n_trans):
        grad[off + k * L * L : off + (k + 1) * L * L] += edge_total.ravel()


def viterbi(w, L, n_feat, n_trans, feat_ptr, feat_ids, out):
    """Best label path; ties go to the lowest label index."""
    E = emissions(w, L, n_feat, feat_ptr, feat_ids)
    A = transition_matrix(w, L, n_feat, n_trans)
    T = E.shape[0]
    delta = E[0].copy()
    back = np.zeros((T, L), dtype=np.int64)
    for t in range(1, T):
        cand = delta[:, None] + A
        back[t] = np.argmax(cand, axis=0)  # argmax returns the first maximum
        delta = E[t] + cand[back[t], np.arange(L)]
    y = int(np.argmax(delta))
    for t in range(T - 1, -1, -1):
        out[t] = y
        y = back[t, y]
