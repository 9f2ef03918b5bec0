"""Walk through a pair that is inseparable but not in the closure of the graph.

Prints the trace-zero profiles, the m-matrix and its 3x3 minors, and the
classifier verdict, then pads the pair with zero slots up to n = 6.
"""
from sepinv.geometry import classify_pair_detailed, m_matrix_and_rank, pair_form
from sepinv.invariants import eval_tracezero_generators
from sepinv.matrix import H, Mat2, MatTuple

U = Mat2(1, 1, 0, -1)


def show(A, B):
    pa, pb = eval_tracezero_generators(A), eval_tracezero_generators(B)
    print(f"n = {len(A)}: E_n profiles agree: {pa == pb} ({len(pa)} invariants)")
    m, r, nz = m_matrix_and_rank(pair_form(A, B))
    for name, row in zip(("b ", "c ", "c'"), m.rows):
        print("   ", name, [str(x) for x in row])
    print("    rank", r, "nonzero minors", nz)
    rep = classify_pair_detailed(A, B)
    print("    verdict:", rep.verdict.value)


def main():
    A, B = [H, U, U], [H, H, U]
    for pad in range(4):
        show(MatTuple(A + [Mat2()] * pad), MatTuple(B + [Mat2()] * pad))


if __name__ == "__main__":
    main()
