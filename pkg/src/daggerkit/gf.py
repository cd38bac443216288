"""The quadratic extension F_{q^2} with its Frobenius conjugation."""

from __future__ import annotations

import itertools

# t^2 = a + b t for the fixed irreducible quadratic of each q
_REDUCTION = {
    2: (1, 1),  # t^2 + t + 1
    3: (2, 0),  # t^2 + 1
}


class GaloisField:
    """F_{q^2} = F_q[t]/(irreducible quadratic), elements encoded as ``a + q*b``.

    ``conj`` is x -> x^q.  Arithmetic is by precomputed tables.
    """

    def __init__(self, q: int):
        if q not in _REDUCTION:
            raise ValueError(f"only q in {sorted(_REDUCTION)} is supported, got {q}")
        self.q = q
        self.size = q * q
        r0, r1 = _REDUCTION[q]
        els = list(range(self.size))
        self.elements = els

        def pair(x):
            return x % q, x // q

        def enc(a, b):
            return a % q + q * (b % q)

        self.add_table = [[enc(pair(x)[0] + pair(y)[0], pair(x)[1] + pair(y)[1]) for y in els] for x in els]
        mul = []
        for x in els:
            a, b = pair(x)
            row = []
            for y in els:
                c, d = pair(y)
                # (a + bt)(c + dt) = ac + (ad + bc) t + bd t^2
                bd = b * d
                row.append(enc(a * c + bd * r0, a * d + b * c + bd * r1))
            mul.append(row)
        self.mul_table = mul
        self.neg_table = [next(y for y in els if self.add_table[x][y] == 0) for x in els]
        self.inv_table = [None] + [next(y for y in els if mul[x][y] == 1) for x in els[1:]]
        self.conj_table = [self.power(x, q) for x in els]

    def add(self, x, y):
        return self.add_table[x][y]

    def mul(self, x, y):
        return self.mul_table[x][y]

    def neg(self, x):
        return self.neg_table[x]

    def sub(self, x, y):
        return self.add_table[x][self.neg_table[y]]

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[x]

    def conj(self, x):
        return self.conj_table[x]

    def power(self, x, n):
        out = 1
        for _ in range(n):
            out = self.mul_table[out][x]
        return out

    def in_base_field(self, x) -> bool:
        return x < self.q

    def name(self, x) -> str:
        a, b = x % self.q, x // self.q
        if b == 0:
            return str(a)
        tb = "t" if b == 1 else f"{b}t"
        return tb if a == 0 else f"{a}+{tb}"

    def __repr__(self):
        return f"GaloisField(q={self.q})"

    # -- matrices as tuples of row tuples --------------------------------

    def matmul(self, A, B, rows, inner, cols):
        """``A`` is rows x inner, ``B`` is inner x cols."""
        out = []
        for i in range(rows):
            row = []
            for j in range(cols):
                s = 0
                for k in range(inner):
                    s = self.add_table[s][self.mul_table[A[i][k]][B[k][j]]]
                row.append(s)
            out.append(tuple(row))
        return tuple(out)

    def conj_transpose(self, A, rows, cols):
        return tuple(tuple(self.conj_table[A[i][j]] for i in range(rows)) for j in range(cols))

    def kron(self, A, B, ra, ca, rb, cb):
        return tuple(
            tuple(self.mul_table[A[i // rb][j // cb]][B[i % rb][j % cb]] for j in range(ca * cb))
            for i in range(ra * rb)
        )

    def identity_matrix(self, n):
        return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

    def matrices(self, rows, cols):
        for flat in itertools.product(self.elements, repeat=rows * cols):
            yield tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows))
