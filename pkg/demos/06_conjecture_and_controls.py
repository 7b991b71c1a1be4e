r"""
How often does the square match, and when does the attack fail?
================================================================

Seeded batches: the square-matching frequency for subcodes, the
subfield-subcode resistance experiment, and a random-code control.
"""

from schurclosure import HermitianSpec
from schurclosure.experiments import (TrialFn, closure_control_trial, conjecture1_experiment,
                                      run_trials, subfield_trial, summarize)

spec = HermitianSpec(4, 20)
for l in (3, 5, 8, 15):
    res = conjecture1_experiment(spec, l, trials=100, seed=3)
    print(f"l={l:2d}  binom(l+1,2)={res.constraints['binom']:3d}  "
          f"dim C(2m)={res.constraints['dim_square']}  frequency={res.frequency:.2f}")

sub = run_trials(TrialFn(subfield_trial, 16, 15, 11, 4), 0, 50)
print("subfield subcodes resisting:", summarize(sub)["frequency"])

ctrl = run_trials(TrialFn(closure_control_trial, 16, 20, 5), 0, 100)
print("random codes already closed:", summarize(ctrl)["frequency"])
