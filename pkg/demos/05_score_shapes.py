"""How each density score treats a miss, as the miss grows.

Fix a Gaussian report on the electoral-vote axis and slide the hypothetical
realization across 0..538.  The bin-local scores (Selten, spherical) go
flat once the realization leaves the report's support: a miss by 50 EV and
a miss by 250 EV look identical.  The log score dives parabolically, which
is the hypersensitivity that ruins forecasters who rounded to zero.  The
CDF penalty grows linearly with distance: wrong, and wronger the farther.

Run from the repo root:  python demos/05_score_shapes.py
"""

import numpy as np

from statecast import gaussian_histogram, score_curves

density = [("report", gaussian_histogram(269, 40))]
realizations = np.arange(539)

curves = {
    metric: score_curves(metric, density, realizations)[:, 0]
    for metric in ("selten", "spherical", "log", "cdf")
}

print("scores of a Gaussian report (mean 269, sd 40) against realizations:\n")
print(f"{'realized EV':>12s} {'selten':>10s} {'spherical':>10s} {'log':>10s} {'cdf':>10s}")
for w in (269, 300, 350, 400, 450, 500, 538):
    print(f"{w:12d} {curves['selten'][w]:10.4f} {curves['spherical'][w]:10.4f} "
          f"{curves['log'][w]:10.2f} {curves['cdf'][w]:10.1f}")

tail = slice(460, 538)
print("\nfar-tail behavior (realizations 460..538):")
print(f"  selten    max |step|          {np.max(np.abs(np.diff(curves['selten'][tail]))):.2e}  (flat)")
print(f"  spherical max |step|          {np.max(np.abs(np.diff(curves['spherical'][tail]))):.2e}  (flat)")
d2 = np.diff(curves["log"], 2)[458:]
print(f"  log       2nd difference      {d2.mean():+.2e}  (constant < 0: parabola)")
d1 = np.diff(curves["cdf"])[tail]
print(f"  cdf       1st difference      {d1.mean():+.4f}  (constant: straight line)")

print("\nsame tables as the CLI writes:  statecast curves --out-dir out/")
