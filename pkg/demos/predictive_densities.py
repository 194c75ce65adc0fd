# Build both predictive densities from the bundled 2017-18 game logs and
# tabulate them over a regulation game, the data behind a density plot.
import numpy as np

from goaltime import (
    PredictionProblem,
    parse_game_log,
    reduce_to_stat,
    restricted_predictive,
    toronto_fixture_path,
    canadiens_fixture_path,
    unrestricted_predictive,
)

toronto = parse_game_log(toronto_fixture_path())
canadiens = parse_game_log(canadiens_fixture_path())
own = reduce_to_stat(toronto, "Toronto Maple Leafs")
rival = reduce_to_stat(canadiens, "Montreal Canadiens")
print(f"own-team statistic: x1 = {own.x:.3f} min over {len(toronto)} games")
print(f"rival statistic:    x2 = {rival.x:.3f} min over {len(canadiens)} games")

problem = PredictionProblem(obs_a=own, obs_b=rival, r_prime=3.0, window=(0.0, 60.0))
q0 = unrestricted_predictive(problem)
q1 = restricted_predictive(problem)

ys = np.linspace(0.5, 59.5, 119)
print("\n   y      q0(y)      q1(y)")
for y in ys[::7]:
    print(f"{y:6.1f}  {q0.pdf(y):9.5f}  {q1.pdf(y):9.5f}")

peak0 = ys[np.argmax(q0.pdf(ys))]
peak1 = ys[np.argmax(q1.pdf(ys))]
print(f"\nq0 peaks near minute {peak0:.1f}; adding the rival record and the")
print(f"scale-ordering information moves the peak to minute {peak1:.1f}.")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(ys, q0.pdf(ys), label="unrestricted $\\hat q_0$")
    ax.plot(ys, q1.pdf(ys), label="restricted $\\hat q_1$")
    ax.set_xlabel("minutes until the 3rd goal")
    ax.set_ylabel("density on (0, 60)")
    ax.legend()
    fig.tight_layout()
    fig.savefig("predictive_densities.png", dpi=150)
    print("wrote predictive_densities.png")
except ImportError:
    pass
