"""Why one number per forecaster is not enough: scoring rules compared.

Two stories.  First, the classic probability-series scores (Brier, log) on
a cautious versus an overconfident forecaster.  Second, the density scores
(Selten, spherical, CDF) on histogram reports, including the case that
motivates the CDF score: two point masses that are equally wrong bin-wise
but wildly different in electoral-vote distance.

Run from the repo root:  python demos/02_scoring_rules.py
"""

import numpy as np

from statecast import (
    BinaryForecastSeries,
    brier,
    cdf_score,
    gaussian_histogram,
    log_likelihood,
    log_score,
    selten,
    spherical,
)

# --- probability series -----------------------------------------------------
days = np.arange(10, dtype=float)
cautious = BinaryForecastSeries("cautious", days, np.full(10, 0.7))
cocksure = BinaryForecastSeries("cocksure", days, np.full(10, 0.999))

print("outcome happens (omega = 1):")
for f in (cautious, cocksure):
    print(f"  {f.forecaster:9s} Brier {brier(f, 1):6.3f}   log {log_likelihood(f, 1):8.4f}")

print("outcome does not happen (omega = 0):")
for f in (cautious, cocksure):
    print(f"  {f.forecaster:9s} Brier {brier(f, 0):6.3f}   log {log_likelihood(f, 0):8.4f}")
print("the log score explodes on overconfidence; Brier barely reacts\n")

# --- density reports ---------------------------------------------------------
realized = 232
broad = gaussian_histogram(300, 60)
narrow = gaussian_histogram(320, 12)

print(f"realized electoral votes: {realized}")
print(f"{'report':28s} {'selten':>9s} {'spherical':>10s} {'log':>9s} {'cdf':>9s}")
for name, h in (("broad (mean 300, sd 60)", broad), ("narrow (mean 320, sd 12)", narrow)):
    print(f"{name:28s} {selten(h, realized):9.4f} {spherical(h, realized):10.4f} "
          f"{log_score(h, realized):9.3f} {cdf_score(h, realized):9.2f}")

# --- the topology problem ----------------------------------------------------
near = np.zeros(539)
near[226] = 1.0
far = np.zeros(539)
far[538] = 1.0

print(f"\npoint mass at 226 vs point mass at 538, outcome 227:")
print(f"  selten: {selten(near, 227):+.0f} and {selten(far, 227):+.0f}  (identical; "
      "bins are scored independently)")
print(f"  cdf:    {cdf_score(near, 227):.0f} and {cdf_score(far, 227):.0f}  "
      "(one EV off vs 311 EV off)")
print("only the CDF score knows the bins live on a line")
