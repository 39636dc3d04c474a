"""A short walk through the local star product on R^{2|1,1}.

Run with ``python3 demos/star_product_tour.py``.
"""
from fractions import Fraction

from superstar import Signature, parse_expression, poisson_bracket, star, star_commutator, bd1_defect

sig = Signature(1, 1, 1)  # one canonical pair (p1, q1), odd t1 with eps=+1, t2 with eps=-1
P = lambda s: parse_expression(s, sig)

print("signature", sig, "eps", sig.epsilons)

# Generators first.  Odd squares pick up -eps/2 * h.
for a, b in [("p1", "q1"), ("q1", "p1"), ("t1", "t1"), ("t2", "t2"), ("t1", "t2")]:
    print(f"{a} * {b} =", star(sig, P(a), P(b)))

print("[p1, q1] =", star_commutator(sig, P("p1"), P("q1")))
print("[t1, t1] =", star_commutator(sig, P("t1"), P("t1")), " (graded: an anticommutator)")

# Higher degree: the series stops once the derivatives run out.
f, g = P("p1^2*t1"), P("q1^2*t1 + p1*t2")
fg = star(sig, f, g)
print("\nf =", f)
print("g =", g)
print("f * g =", fg)
print("h^0 part  =", fg.hbar_coefficient(0))
print("h^1 part  =", fg.hbar_coefficient(1), "   vs {f,g}/2 =", poisson_bracket(sig, f, g).scale(Fraction(1, 2)))

# The commutator agrees with h{f,g} up to h^2.
d = bd1_defect(sig, f, g)
print("[f,g] - h{f,g} =", d, " divisible by h^2:", d.divisible_by_hbar(2))

h3 = P("q1 + t2")
print("\nassociative on (f, g, q1 + t2):", star(sig, star(sig, f, g), h3) == star(sig, f, star(sig, g, h3)))
