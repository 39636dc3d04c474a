"""Linear symmetries of the star product, Hamiltonian fields and Taylor jets."""
import random
from fractions import Fraction as F

from superstar import Signature, parse_expression, poisson_bracket, star
from superstar.formal import hamiltonian_vf, jet_flatness_defect, split_at_origin, taylor_jet
from superstar.sampling import random_even_member
from superstar.symplectic import SuperMatrix, act, is_sp_member

# -- Sp(2|1,1) -----------------------------------------------------------------
sig = Signature(1, 1, 1)
P = lambda s: parse_expression(s, sig)

shear_boost = SuperMatrix.from_blocks(sig, A=[[1, 2], [0, 1]], D=[[F(5, 4), F(3, 4)], [F(3, 4), F(5, 4)]])
print("shear (+) boost is a member:", is_sp_member(sig, shear_boost))
for v in ("p1", "q1", "t1", "t2"):
    print(f"  {v} ->", act(sig, shear_boost, P(v)))

f, g = P("p1*t1 + q1^2"), P("q1*t2 - p1")
lhs = act(sig, shear_boost, star(sig, f, g))
rhs = star(sig, act(sig, shear_boost, f), act(sig, shear_boost, g))
print("act(f*g) == act(f)*act(g):", lhs == rhs)

rng = random.Random(0)
M = random_even_member(rng, Signature(2, 1, 1))
print("\na random even member of Sp(4|1,1):")
print(M)

# -- Hamiltonian vector fields ---------------------------------------------------
h = P("p1^2/2 + q1*t1*t2")
v = hamiltonian_vf(sig, h)
print("\nv_h for h =", h)
for z, c in v.coefficients.items():
    print(f"  {z} ->", c)
lo, const = split_at_origin(v)
print("constant part:", {str(z): str(c) for z, c in const.items()} or "none")
print("v_h(q1*t2) =", v(P("q1*t2")), " = {h, q1*t2} =", poisson_bracket(sig, h, P("q1*t2")))

# -- jets --------------------------------------------------------------------------
s2 = Signature(1, 2, 0)
f = parse_expression("p1^2*t1 + q1*t1*t2", s2)
j = taylor_jet(f, 3)
print("\ntaylor jet of", f, "(fiber coordinates in capitals):")
print(" ", j)
print("flat:", all(d.is_zero() for d in jet_flatness_defect(j)))
print("restricts back to f:", j.restrict_to_base() == f)
