"""Walkthrough: engineering an entanglement-breaking channel to the warden.

The achievability analysis wants the sender-to-warden channel to be
entanglement breaking (condition: eta * nbar_b > 1 - eta).  When the
physical channel is too clean for that, the sender can prepend optics:

  * attenuate  -- extra loss before the channel (lowers the warden's
    reflectance, keeps the background);
  * amplify    -- a quantum-limited amplifier followed by matched loss
    (keeps the reflectance, raises the warden's effective background).

Both are exactly equivalent, at the warden's port, to a single channel
with modified parameters, which is verified against a brute-force
simulation of the full optical train (``covert-bosonic verify --check
eb_pipelines``).  This demo prints the two plans for a channel that is
not naturally entanglement breaking and shows the price paid in the
covertness constant and achievable rate.

Run: python3 demos/eb_walkthrough.py
"""

from covert_bosonic import (
    ChannelParams,
    assisted_rate,
    c_cov,
    hashing_rate,
    is_entanglement_breaking,
    plan_lemma1,
    plan_lemma2,
)

params = ChannelParams(eta=0.5, nbar_b=0.5)
print(f"channel: transmittance {params.eta}, background {params.nbar_b}")
print(f"entanglement breaking already? {is_entanglement_breaking(params)}"
      f"  (needs eta*nbar_b = {params.eta * params.nbar_b} > "
      f"{1 - params.eta} = 1 - eta)")
print()


def describe(title, plan):
    cov, rate = plan.effective_covert_params, plan.effective_rate_params
    print(title)
    print(f"  mechanism: {plan.mechanism.value}  tau = {plan.tau:.4f}  "
          f"gain = {plan.gain_eb:.4f}  added noise = {plan.nbar_prime:.4f}")
    print(f"  effective covert channel: eta = {cov.eta:.4f}, "
          f"nbar_b = {cov.nbar_b:.4f}  "
          f"(breaking: {is_entanglement_breaking(cov)})")
    print(f"  covertness constant: {c_cov(params):.4f} -> {c_cov(cov):.4f}")
    print(f"  hashing rate:        {hashing_rate(params):.4f} -> "
          f"{hashing_rate(rate):.4f}")
    print(f"  assisted rate:       {assisted_rate(params):.4f} -> "
          f"{assisted_rate(rate):.4f}")
    print()


describe("Plan A -- attenuate the signal:", plan_lemma1(params))
describe("Plan B -- inject amplifier noise:", plan_lemma2(params))

print("Trade-off: attenuation shrinks what the warden sees (larger")
print("covertness constant, more covert qubits per sqrt(n)) but also what")
print("the receiver sees; noise injection keeps the signal but drowns the")
print("receiver in added thermal photons.  Pick per channel parameters.")
