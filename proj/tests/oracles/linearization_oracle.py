# Independent linearization of the nonlinear transport, tangential and pressure
# relations around a background state. Prints the exact first-order
# coefficients next to the closed forms used by the library.
import sympy as sp

g, lam = sp.symbols('gamma lambda', positive=True)
x, y, eps = sp.symbols('x y epsilon')
ub, rb, pb, mb = (sp.Function(n)(x) for n in ('u_b', 'rho_b', 'p_b', 'm_b'))
P1, E1, A1, V1 = (sp.Function(n)(x, y) for n in ('P1', 'E1', 'A1', 'V1'))


def ode_rhs(u, r, p, m):
    c2 = g * p / r
    M2 = u**2 / c2
    du = lam * (g + 1) * m * M2 / (2 * (1 - M2))
    dr = lam / 2 * r * m / u * (2 - (g + 3) * M2) / (1 - M2)
    dp = -lam / 2 * r * m * u * (2 + (g - 1) * M2) / (1 - M2)
    return du, dr, dp


dmb, d2mb = sp.symbols('dm_b d2m_b')
du1, dr1, dp1 = ode_rhs(ub, rb, pb, mb)
first = {sp.Derivative(ub, x): du1, sp.Derivative(rb, x): dr1,
         sp.Derivative(pb, x): dp1, sp.Derivative(mb, x): dmb}


def second(expr):
    d = sp.diff(expr, x).subs(sp.Derivative(mb, (x, 2)), d2mb)
    return d.subs(first)


sec = {sp.Derivative(ub, (x, 2)): second(du1), sp.Derivative(rb, (x, 2)): second(dr1),
       sp.Derivative(pb, (x, 2)): second(dp1), sp.Derivative(mb, (x, 2)): d2mb}


def reduce_bg(e):
    e = e.subs(sec).subs(first)
    return e


Ab = pb / rb**g
Eb = ub**2 / 2 + g * pb / rb / (g - 1)

p = pb + eps * P1
E = Eb + eps * E1
A = Ab + eps * A1
v = eps * V1
m = mb
rho = (p / A)**(1 / g)
u = sp.sqrt(2 * E - v**2 - 2 * g / (g - 1) * p**(1 - 1 / g) * A**(1 / g))
c2 = g * p / rho
M2 = (u**2 + v**2) / c2

dx = lambda f: sp.diff(f, x)
dy = lambda f: sp.diff(f, y)


def lin(expr):
    return sp.diff(expr, eps).subs(eps, 0)


# transport right-hand sides: d_x E + (v/u) d_y E = RE
RE = -dx(Eb) - lam * m * E / u
RA = -dx(Ab) - lam * g * m * (1 - (g - 1) / 2 * M2) * A / u

# tangential equation right-hand side (k excluded)
RV = -(u * dx(p) + v * dy(p)) / (g * p) + lam * m * (1 + (g - 1) * M2 / 2) \
    + (v * dy(u) + dx(p) / rho) / u

# replaced normal derivatives
ux_r = -dx(p) / (rho * u) - lam * m - v / u**2 * dy(E) \
    + v * rho**(g - 1) / ((g - 1) * u**2) * dy(A) - v / u * dx(v) - lam * m * v**2 / u**2
rx_r = dx(p) / c2 + lam * m * rho / u * (1 - (g - 1) / 2 * M2) + v * rho**g / (u * c2) * dy(A)
kk = sp.Symbol('k')
vy_r = RV - kk
c2x_r = g * dx(p) / rho - c2 * rx_r / rho
M2x_r = (2 * u * ux_r + 2 * v * dx(v)) / c2 - M2 * c2x_r / c2

C1 = (u * dx(v) * dy(p) + v * dy(u) * dx(p) + v * dy(v) * dy(p)) / (g * p) \
    - 2 * u * v / (g * p**2) * dx(p) * dy(p) - v**2 / (g * p**2) * dy(p)**2
C2 = -dy(rho) * dy(p) / rho**2
C3 = 2 * dy(u) * dx(v) + dy(v)**2
C4 = v * dy(m * M2)
C5 = v * dy(m)

PP = (u**2 - c2) / (g * p) * dx(dx(p)) + (v**2 - c2) / (g * p) * dy(dy(p)) \
    + 2 * u * v / (g * p) * dx(dy(p)) - u**2 / (g * p**2) * dx(p)**2 \
    + (u * ux_r + c2 / rho * rx_r) / (g * p) * dx(p) - ux_r**2 \
    - lam * ((g - 1) * M2 + 2) / 2 * u * dx(m) - lam * (g - 1) * u * m / 2 * M2x_r \
    - lam * m * ux_r - lam * m * vy_r + C1 - C2 - C3 - lam * (g - 1) / 2 * C4 - lam * C5

# numeric background point
POINTS = [
    dict(gamma=sp.Rational(7, 5), lam=sp.Integer(1), M=sp.Rational(1, 2), rho=sp.Integer(1), p=sp.Integer(1),
         m=sp.Integer(1), dm=sp.Rational(3, 10), d2m=sp.Rational(-1, 5)),
    dict(gamma=sp.Rational(5, 3), lam=sp.Rational(-1, 2), M=sp.Rational(3, 10), rho=sp.Rational(13, 10),
         p=sp.Rational(7, 10), m=sp.Rational(4, 5), dm=sp.Rational(-1, 4), d2m=sp.Rational(1, 2)),
]
vals, ptval = {}, {}


def set_point(pt):
    vals.clear()
    vals.update({g: pt['gamma'], lam: pt['lam']})
    c0 = sp.sqrt(pt['gamma'] * pt['p'] / pt['rho'])
    ptval.clear()
    ptval.update({ub: pt['M'] * c0, rb: pt['rho'], pb: pt['p'], mb: pt['m'], dmb: pt['dm'], d2mb: pt['d2m']})


def at_point(e):
    e = reduce_bg(e)
    e = e.subs(vals)
    return sp.N(e.subs(ptval), 20)


def coeff(expr, f):
    return sp.diff(expr, f)


def linear_parts(R, names):
    L = lin(R)
    syms = {}
    reps = {}
    for nm, obj in names:
        s = sp.Symbol(nm)
        syms[nm] = s
        reps[obj] = s
    Lr = L.subs(reps)
    return {nm: at_point(sp.diff(Lr, s)) for nm, s in syms.items()}, Lr, syms


order = [('Pxx', sp.Derivative(P1, (x, 2))), ('Pyy', sp.Derivative(P1, (y, 2))),
         ('Pxy', sp.Derivative(P1, x, y)), ('Px', sp.Derivative(P1, x)), ('Py', sp.Derivative(P1, y)),
         ('Ex', sp.Derivative(E1, x)), ('Ey', sp.Derivative(E1, y)),
         ('Ax', sp.Derivative(A1, x)), ('Ay', sp.Derivative(A1, y)),
         ('Vx', sp.Derivative(V1, x)), ('Vy', sp.Derivative(V1, y)),
         ('P', P1), ('E', E1), ('A', A1), ('V', V1)]

if __name__ == '__main__':
    rob = dx(p) - lam * g * m * u * (1 + (g - 1) * M2 / 2) * p / (u**2 - c2)
    for i, pt in enumerate(POINTS):
        set_point(pt)
        print('point', i, {k: str(v) for k, v in pt.items()})
        print('  bg p_x, p_xx:', at_point(dp1), at_point(sec[sp.Derivative(pb, (x, 2))]))
        for name, R in (('RE', RE), ('RA', RA), ('RV', RV), ('rho_b*P', PP * rb), ('inlet', rob)):
            tr, _, _ = linear_parts(R, order)
            print(' ', name, {k: sp.N(v, 16) for k, v in tr.items() if abs(v) > 1e-14})
