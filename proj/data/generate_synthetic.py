"""Writes the synthetic ENZ-like coupling tables and their manifest.

The tables are smooth analytic profiles, not simulation output. The 1450 nm
profile keeps gamma12/gamma near unity with a weak coherent coupling; the
other two are weaker, oscillating profiles.
"""
import json
import math

R = [round(0.05 * i, 10) for i in range(41)]  # 0 .. 2


def enz_1450(r):
    return 0.98 - 0.06 * r, 0.05 * (1.0 + 0.2 * math.sin(math.pi * (r - 0.5)))


def enz_1300(r):
    return 0.55 * math.exp(-0.3 * r) * math.cos(1.2 * r), 0.15 * math.exp(-0.5 * r) * math.sin(2.0 * r)


def enz_1250(r):
    return 0.4 * math.exp(-0.5 * r) * math.cos(2.0 * math.pi * r), 0.2 * math.exp(-r) * math.cos(math.pi * r)


TABLES = [(1250, 8.0e-9, enz_1250), (1300, 6.5e-9, enz_1300), (1450, 2.1e-9, enz_1450)]

manifest = []
for lam, tau, f in TABLES:
    name = f"enz_{lam}.csv"
    with open(name, "w") as fh:
        fh.write(f"# lambda_nm={lam}\n# gamma_seconds={tau!r}\n")
        fh.write("r_over_lambda,gamma12_over_gamma,g12_over_gamma\n")
        for r in R:
            b, g = f(r)
            fh.write(f"{r!r},{b!r},{g!r}\n")
    manifest.append({"lambda_nm": lam, "gamma_seconds": tau, "table": name})

with open("manifest.json", "w") as fh:
    json.dump(manifest, fh, indent=2)
    fh.write("\n")
