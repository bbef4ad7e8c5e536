"""An equation over F_3(theta) whose solutions are built from Carlitz-type products.

Run with:  python demos/carlitz.py
"""

from mahler import FpFunctionField, MahlerEquation, parse_expression, solve_equation, verify_basis

F = FpFunctionField(3)
coeffs = ["(z^3-theta)*(z^9-theta)", "-(z^3-theta-1)*(z^9-theta)", "-(z^3-theta)"]
eq = MahlerEquation(3, [parse_expression(c, F) for c in coeffs], F)
print("equation:", eq)

res = solve_equation(eq, 12)
prov = res.provenance
print("\nTheta after triangularization:")
for row in prov["theta"]:
    print("   ", [t.format() for t in row])
print("e_C diagonal:", [prov["eC"][i][i].format() for i in range(2)])

print("\nbasis:")
print(res.format())
print("\ncheck:", verify_basis(eq, res, order=12))
