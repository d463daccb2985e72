"""Fraenkel asymmetry from shapely polygons (200k vertices) and Nelder-Mead over centers."""
import numpy as np
from scipy import optimize
from shapely.geometry import Point, Polygon

T = np.linspace(0.0, 2 * np.pi, 200000, endpoint=False)


def radius_fn(eps, cos, sin):
    def r(t):
        v = sum(c * np.cos(k * t) for k, c in enumerate(cos))
        v = v + sum(s * np.sin((k + 1) * t) for k, s in enumerate(sin))
        return 1 + eps * v
    return r


def fraenkel(eps, cos, sin):
    r = radius_fn(eps, cos, sin)(T)
    poly = Polygon(np.c_[r * np.cos(T), r * np.sin(T)])
    rad = np.sqrt(poly.area / np.pi)

    def f(c):
        disk = Point(c).buffer(rad, resolution=50000)
        return poly.symmetric_difference(disk).area / poly.area

    res = optimize.minimize(f, [0.0, 0.0], method="Nelder-Mead", options={"xatol": 1e-7, "fatol": 1e-12})
    return res.fun, res.x


for eps in (0.02, 0.05, 0.1):
    A, c = fraenkel(eps, [0, 0, 0, 1], [])
    print(f"cos3 eps={eps}: A={A:.12f} center={c}")
A, c = fraenkel(0.08, [0, 0, 0, 1], [0, 0, 0, 0, 0.5])
print(f"cos3+0.5sin5 eps=0.08: A={A:.12f} center={c}")
