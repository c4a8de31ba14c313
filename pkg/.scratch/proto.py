import math
import numpy as np

C0 = 299792458.0

def cheby_g(n, ripple_db):
    beta = math.log(1.0 / math.tanh(ripple_db / 17.37))
    gamma = math.sinh(beta / (2 * n))
    a = [math.sin((2*k-1)*math.pi/(2*n)) for k in range(1, n+1)]
    b = [gamma**2 + math.sin(k*math.pi/n)**2 for k in range(1, n+1)]
    g = [1.0, 2*a[0]/gamma]
    for k in range(2, n+1):
        g.append(4*a[k-2]*a[k-1]/(b[k-2]*g[k-1]))
    g.append(1.0 if n % 2 else 1.0/math.tanh(beta/4)**2)
    return g

n, rip, w, f0 = 8, 0.2, 0.2, 13.2e9
Z0 = 50.0; Y0 = 1/Z0; Z0l = 50.0; Y0l = 1/Z0l
g = cheby_g(n, rip)
ks = [w/math.sqrt(g[j]*g[j+1]) for j in range(1, n)]
qe = g[0]*g[1]/w
b_int = math.pi*Y0l/4
b_end = qe*Y0
y_end = 4*qe*Y0/math.pi
CLAMP = 1e15

def line_abcd(z0, eps, length, f):
    th = 2*math.pi*f*np.sqrt(eps)*length/C0
    c, s = np.cos(th), np.sin(th)
    A = np.empty(f.shape + (2, 2), complex)
    A[..., 0, 0] = c; A[..., 0, 1] = 1j*z0*s
    A[..., 1, 0] = 1j*s/z0; A[..., 1, 1] = c
    return A

def shunt_y_abcd(Y):
    A = np.zeros(Y.shape + (2, 2), complex)
    A[..., 0, 0] = 1.0; A[..., 1, 1] = 1.0
    A[..., 1, 0] = Y
    return A

def clamp_imag(Y):
    return Y.real + 1j*np.clip(Y.imag, -CLAMP, CLAMP)

def short_stub_y(z0, eps, length, f):
    th = 2*math.pi*f*np.sqrt(eps)*length/C0
    return clamp_imag(-1j*(1/z0)/np.tan(th))

def inverter_abcd(J, f):
    A = np.zeros(f.shape + (2, 2), complex)
    A[..., 0, 1] = -1j/J; A[..., 1, 0] = -1j*J
    return A

def cascade(mats):
    out = mats[0]
    for m in mats[1:]:
        out = out @ m
    return out

def abcd_to_s(A, zref):
    a, b, c, d = A[..., 0, 0], A[..., 0, 1], A[..., 1, 0], A[..., 1, 1]
    den = a + b/zref + c*zref + d
    return (a + b/zref - c*zref - d)/den, 2.0/den, (-a + b/zref - c*zref + d)/den

Lq = C0/(4*f0)
feed_len = 300e-6
eps_re = 12.49

def solve_pair(fzL, fzH):
    thL0, thH0 = math.pi*f0/fzL, math.pi*f0/fzH
    A = np.array([[1/math.tan(thL0), 1/math.tan(thH0)],
                  [(f0*math.pi/2/fzL)/math.sin(thL0)**2, (f0*math.pi/2/fzH)/math.sin(thH0)**2]])
    return np.linalg.solve(A, np.array([0.0, b_end]))

def build(f, end_node_fn):
    mats = [line_abcd(Z0, 1.0, feed_len, f), shunt_y_abcd(end_node_fn(f))]
    for j in range(1, n):
        bj = b_end if j == 1 else b_int
        bj1 = b_end if j == n-1 else b_int
        mats.append(inverter_abcd(ks[j-1]*math.sqrt(bj*bj1), f))
        if j == n-1:
            mats.append(shunt_y_abcd(end_node_fn(f)))
        else:
            mats.append(shunt_y_abcd(short_stub_y(Z0l, 1.0, Lq, f)))
    mats.append(line_abcd(Z0, 1.0, feed_len, f))
    return cascade(mats)

def sweep_A(f):
    return abcd_to_s(build(f, lambda ff: short_stub_y(1/y_end, 1.0, Lq, ff)), Z0)

def sweep_B(f, l_low, l_high, YL, YH):
    def node(ff):
        return short_stub_y(1/YL, eps_re, l_low, ff) + short_stub_y(1/YH, eps_re, l_high, ff)
    return abcd_to_s(build(f, node), Z0)

def zero_len(fz):
    return C0/(2*fz*math.sqrt(eps_re))

f1g = f0*(-w/2+math.sqrt(1+w*w/4)); f2g = f0*(w/2+math.sqrt(1+w*w/4))
