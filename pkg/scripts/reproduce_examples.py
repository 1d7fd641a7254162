"""Recompute the worked numeric examples and print them next to the published values."""

from pathlib import Path

from mdse import load_graph
from mdse.inference import event_posterior, joint_probability, prob_event
from mdse.priors import priors_from_counts, priors_uniform

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main():
    rows = []
    financial = load_graph(FIXTURES / "financial.mdse")
    rows.append(("financial default risk", prob_event(financial, 3).value, 0.57))
    post = event_posterior(load_graph(FIXTURES / "reweighting.mdse"), 0, 2).values
    rows.append(("reweighted prior, dog", post[0], 0.857))
    rows.append(("reweighted prior, not dog", post[1], 0.143))
    rows.append(("medical joint", joint_probability((0.5, 0.7), 0.24), 0.084))
    rows.append(("frequentist prior", priors_from_counts((60, 40))[0], 0.6))
    rows.append(("uniform prior, m=4", priors_uniform(4)[0], 0.25))
    mixture = load_graph(FIXTURES / "mixture.mdse")
    rows.append(("extended event probability", prob_event(mixture, 5).value, 0.614))

    width = max(len(name) for name, _, _ in rows)
    print(f"{'example':<{width}}  {'computed':>12}  {'published':>9}")
    for name, got, published in rows:
        print(f"{name:<{width}}  {got:12.9f}  {published:9.3f}")


if __name__ == "__main__":
    main()
