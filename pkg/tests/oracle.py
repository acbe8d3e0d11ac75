"""Floating-point reference computations, built only from the serialized
structure constants and evaluated with numpy.  Used to cross-check the exact
results through the embedding zeta_N -> exp(2 pi i / N)."""

from __future__ import annotations

import cmath

import numpy as np
import scipy.linalg

from quasihopf.io import AlgebraFile, to_dict

TOL = 1e-9


def embed(obj, N: int) -> complex:
    if isinstance(obj, int):
        return complex(obj)
    z = cmath.exp(2j * cmath.pi / N)
    return sum(c * z**k for k, c in enumerate(obj["num"])) / obj["den"]


def scalar_to_complex(c) -> complex:
    z = cmath.exp(2j * cmath.pi / c.field.N)
    return sum(int(a) * z**k for k, a in enumerate(c.num)) / c.den


def exact_to_array(t) -> np.ndarray:
    """A TensorElement as a complex array of shape (d,)*rank."""
    out = np.zeros((t.dim,) * t.rank, dtype=complex)
    for c, idx in t.terms():
        out[idx] = scalar_to_complex(c)
    return out


class NumericQHA:
    def __init__(self, H, r_matrix=None):
        doc = to_dict(AlgebraFile(H, r_matrix))
        N = doc["cyclotomic_order"]
        d = self.d = doc["dim"]
        e = lambda v: np.array([embed(c, N) for c in v])
        self.M = np.array([[e(doc["mult"][i][j]) for j in range(d)] for i in range(d)])
        self.unit = e(doc["unit"])
        self.eps = e(doc["counit"])
        self.D = np.array([e(col).reshape(d, d) for col in doc["comult"]])  # D[j] = Delta(e_j)
        self.S = np.array([e(row) for row in doc["antipode"]])  # S e_j = S[:, j]
        self.alpha = e(doc["alpha"])
        self.beta = e(doc["beta"])
        self.phi = self._sparse(doc["phi"], 3, N)
        self.phi_inv = self._sparse(doc["phi_inv"], 3, N)
        self.R = self._sparse(doc["r_matrix"], 2, N) if "r_matrix" in doc else None

    def _sparse(self, entries, rank, N):
        out = np.zeros((self.d,) * rank, dtype=complex)
        for ent in entries:
            out[tuple(ent["indices"])] = embed(ent["coeff"], N)
        return out

    # rank-1 helpers
    def mul(self, *xs):
        acc = xs[0]
        for x in xs[1:]:
            acc = np.einsum("i,j,ijk->k", acc, x, self.M)
        return acc

    def s(self, x):
        return self.S @ x

    def basis(self, i):
        v = np.zeros(self.d, dtype=complex)
        v[i] = 1
        return v

    # tensors
    def tmul(self, a, b):
        r = a.ndim
        t = np.multiply.outer(a, b)
        for k in range(r):
            # axes: remaining legs of a, remaining legs of b, finished output legs
            t = np.tensordot(t, self.M, axes=([0, r - k], [0, 1]))
        return t

    def delta_leg(self, t, leg):
        """Apply the coproduct to one leg of t, producing two adjacent legs."""
        moved = np.moveaxis(t, leg, -1)
        out = np.tensordot(moved, self.D, axes=([moved.ndim - 1], [0]))
        return np.moveaxis(np.moveaxis(out, -2, leg), -1, leg + 1)

    def one(self, rank):
        out = self.unit
        for _ in range(rank - 1):
            out = np.multiply.outer(out, self.unit)
        return out

    def inverse(self, x):
        L = np.array([[self.mul(self.basis(i), self.basis(j)) for j in range(self.d)] for i in range(self.d)])
        # left multiplication by x as a matrix
        Lx = np.einsum("i,ijk->kj", x, L)
        return np.linalg.solve(Lx, self.unit)

    # gauge data via the reassociator products A and B
    def gamma_delta(self):
        A = self.tmul(np.multiply.outer(self.phi, self.unit), self.delta_leg(self.phi_inv, 0))
        B = self.tmul(self.delta_leg(self.phi, 0), np.multiply.outer(self.phi_inv, self.unit))
        d, a, b = self.d, self.alpha, self.beta
        e = self.basis
        P = np.array([[self.mul(self.s(e(j)), a, e(k)) for k in range(d)] for j in range(d)])
        Q = np.array([[self.mul(e(j), b, self.s(e(k))) for k in range(d)] for j in range(d)])
        gamma = np.einsum("ijkl,jkp,ilq->pq", A, P, P)
        delta = np.einsum("ijkl,ilp,jkq->pq", B, Q, Q)
        return gamma, delta

    def twist(self):
        gamma, delta = self.gamma_delta()
        d, a, b = self.d, self.alpha, self.beta
        e = self.basis
        ss_dcop = np.array([np.einsum("ij,pi,qj->pq", self.D[i].T, self.S, self.S) for i in range(d)])
        f = np.zeros((d, d), dtype=complex)
        f_inv = np.zeros((d, d), dtype=complex)
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    c = self.phi_inv[i, j, k]
                    if abs(c) < TOL:
                        continue
                    mid = np.tensordot(self.D, self.mul(e(j), b, self.s(e(k))), axes=([0], [0]))
                    f += c * self.tmul(self.tmul(ss_dcop[i], gamma), mid)
                    left = np.tensordot(self.D, self.mul(self.s(e(i)), a, e(j)), axes=([0], [0]))
                    f_inv += c * self.tmul(self.tmul(left, delta), ss_dcop[k])
        return f, f_inv

    def u(self):
        """S(R^2 x^2 beta S(x^3)) alpha R^1 x^1."""
        d, e = self.d, self.basis
        out = np.zeros(d, dtype=complex)
        for (p, q), rc in np.ndenumerate(self.R):
            if abs(rc) < TOL:
                continue
            for (i, j, k), xc in np.ndenumerate(self.phi_inv):
                if abs(xc) < TOL:
                    continue
                inner = self.mul(e(q), e(j), self.beta, self.s(e(k)))
                out += rc * xc * self.mul(self.s(inner), self.alpha, e(p), e(i))
        return out

    def integral_pivotal(self):
        """From a normalized left integral t: q^2 t_2 p^2 S(q^1 t_1 p^1)."""
        d, e = self.d, self.basis
        rows = []
        for h in range(d):
            for k in range(d):
                rows.append([self.mul(e(h), e(j))[k] - self.eps[h] * (j == k) for j in range(d)])
        ns = scipy.linalg.null_space(np.array(rows))
        t = ns[:, 0]
        if abs(self.eps @ t) < TOL:
            raise ZeroDivisionError("left integral has counit zero")
        t = t / (self.eps @ t)
        M, S = self.M, self.S
        sinv = np.linalg.inv(S)
        dt = np.tensordot(self.D, t, axes=([0], [0]))
        # p2[j, k] = e_j beta S(e_k);  q2[j, k] = S^-1(alpha e_k) e_j
        jb = np.einsum("jxz,x->jz", M, self.beta)
        p2 = np.einsum("jx,xyz,yk->jkz", jb, M, S)
        sa = np.einsum("zx,kx->kz", sinv, np.einsum("i,ikz->kz", self.alpha, M))
        q2 = np.einsum("kx,xjz->jkz", sa, M)
        left = np.einsum("jkx,xbz->jkbz", q2, M)
        left = np.einsum("jkbx,xyz,mny->jkbmnz", left, M, p2, optimize=True)
        right = np.einsum("abx,xcy,zy->abcz", M, M, S, optimize=True)  # S(e_a e_b e_c)
        return np.einsum("ijk,lmn,ab,mnbjkx,laiy,xyz->z", self.phi_inv, self.phi, dt, left, right, M,
                         optimize=True)


def close(a, b) -> bool:
    return np.allclose(a, b, atol=TOL)
