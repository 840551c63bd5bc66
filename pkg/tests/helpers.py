"""Shared sampling helpers for the test modules."""
from delpezzo_mirror import KaehlerClass


def random_class(rng, k, im_tau=(0.8, 1.5)):
    """A Kaehler class with pairings spread over a fundamental domain."""
    tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(*im_tau))
    cbar = complex(rng.uniform(0, 3), rng.uniform(0.05, 0.95) * 3 * tau.imag)
    c = tuple(complex(rng.uniform(0, 3), rng.uniform(0.05, 0.95) * 3 * tau.imag) for _ in range(k))
    return KaehlerClass(k, tau, cbar, c)
