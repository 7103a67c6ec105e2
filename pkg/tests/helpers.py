"""Shared test helpers."""
import itertools

from twyb.cochain import Cochain


def random_equivariant(tw, degree, module, rng):
    """A random cochain with c(f w) = u c(w), built orbit by orbit."""
    vals = {}
    f = tw.twist
    for w in itertools.product(range(tw.size), repeat=degree):
        if w in vals:
            continue
        orbit = [w]
        while True:
            nxt = tuple(int(f(v)) for v in orbit[-1])
            if nxt == w:
                break
            orbit.append(nxt)
        L = len(orbit)
        # c(w) must be killed by u^L - 1
        choices = [v for v in range(module.modulus)
                   if (module.power(L) * v - v) % module.modulus == 0]
        v = int(rng.choice(choices))
        for k, o in enumerate(orbit):
            vals[o] = module.act(v, k)
    return Cochain.from_function(tw.size, degree, module.modulus, lambda *w: vals[w])
