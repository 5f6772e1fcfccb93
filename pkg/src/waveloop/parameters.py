"""Physical and numerical parameters of the driven emitter + feedback loop."""
from __future__ import annotations

import math
from dataclasses import dataclass, field


class ParameterError(ValueError):
    """Raised for invalid or inconsistent model parameters."""


TWO_PI = 2.0 * math.pi

# The bin-discretized model is only trustworthy while the per-step emission
# probability stays small; reject anything past this.
MAX_DT_GAMMA = 0.1


@dataclass(frozen=True)
class ModelParams:
    """All rates, drive settings and discretization choices for one run.

    Rates are angular rates (1/time).  `tau` and `n_bins` are the canonical
    inputs; the step `dt = tau / n_bins` is always derived so the round-trip
    delay is an exact multiple of the step.  With `feedback=False` the loop
    coupling gamma_L is treated as an extra unmonitored Markovian decay
    channel instead of a coherent bin coupling (the infinitely-long-loop
    limit); the output-side bin is kept so detection works unchanged.
    """

    gamma_L: float = 0.5          # coupling into the loop
    gamma_R: float = 0.5          # coupling toward the monitored output
    gamma0: float = 0.0           # off-chip decay
    gamma_prime: float = 0.0      # pure dephasing
    Omega: float = 0.0            # Rabi frequency of the CW drive
    delta: float = 0.0            # emitter - laser detuning
    phi: float = 0.0              # round-trip phase, stored reduced mod 2*pi
    tau: float = 0.1              # round-trip delay of the loop
    n_bins: int = 10              # number of waveguide bins N
    feedback: bool = True

    dt: float = field(init=False)

    def __post_init__(self):
        for name in ("gamma_L", "gamma_R", "gamma0", "gamma_prime"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise ParameterError(f"{name} must be a finite non-negative rate, got {v}")
        for name in ("Omega", "delta", "tau", "phi"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")
        if self.tau <= 0:
            raise ParameterError(f"tau must be positive, got {self.tau}")
        if int(self.n_bins) != self.n_bins or self.n_bins < 2:
            raise ParameterError(f"n_bins must be an integer >= 2, got {self.n_bins}")
        object.__setattr__(self, "n_bins", int(self.n_bins))
        object.__setattr__(self, "phi", self.phi % TWO_PI)
        object.__setattr__(self, "dt", self.tau / self.n_bins)
        g_wg = self.gamma_L + self.gamma_R
        if self.dt * g_wg >= MAX_DT_GAMMA:
            raise ParameterError(
                f"dt*(gamma_L+gamma_R) = {self.dt * g_wg:.4g} exceeds {MAX_DT_GAMMA}; "
                f"increase n_bins (the bin model needs dt << 1/(gamma_L+gamma_R))"
            )
        # jump probabilities per step must stay well-defined
        if self.dt * (self.gamma0 + self.gamma_prime) >= 1.0:
            raise ParameterError(
                "dt*(gamma0+gamma_prime) >= 1: per-step jump probability is ill-defined"
            )

    @property
    def gamma_waveguide(self) -> float:
        """Total waveguide coupling gamma_L + gamma_R (the rate unit used in output)."""
        return self.gamma_L + self.gamma_R

    def replace(self, **kw) -> "ModelParams":
        from dataclasses import asdict
        d = asdict(self)
        d.pop("dt")
        d.update(kw)
        return ModelParams(**d)


def params_for_delay(tau: float, dt_target: float = 0.01, **kw) -> ModelParams:
    """Build params with n_bins chosen so dt is as close as possible to dt_target."""
    n = max(2, round(tau / dt_target))
    return ModelParams(tau=tau, n_bins=n, **kw)


def no_feedback_params(dt: float = 0.01, **kw) -> ModelParams:
    """Params for the no-feedback (infinite loop) mode at a given step size.

    Only the output bin is coherently coupled, so the minimum bin count is
    used and tau is just 2*dt.
    """
    kw.pop("feedback", None)
    return ModelParams(tau=2 * dt, n_bins=2, feedback=False, **kw)
