"""Single-letter corruptions of braid presentations."""
from surfbraid.families import artin_generator_set, braid_presentation
from surfbraid.goldberg import GRID
from surfbraid.presentations import Presentation
from surfbraid.rewrite import Budget
from surfbraid.words import Word

# corrupted quotients need not complete; keep failures cheap
MUTATION_BUDGET = Budget(max_rules=2_000, max_rule_length=40, max_steps=200_000)


def mutable_cases():
    """Grid cases with at least one relator letter that survives the kill."""
    out = []
    for case in GRID:
        pres = braid_presentation(*case)
        killed = artin_generator_set(*case)
        if any(s not in killed for r in pres.relators for s, _ in r):
            out.append(case)
    return out


def corrupt(case, rng) -> Presentation:
    """Replace one surviving letter of one relator by a different letter."""
    pres = braid_presentation(*case)
    killed = artin_generator_set(*case)
    survivors = [s for s in pres.generators if s not in killed]
    spots = [(ri, k) for ri, r in enumerate(pres.relators)
             for k, (s, _) in enumerate(r.letters) if s not in killed]
    ri, k = rng.choice(spots)
    letters = list(pres.relators[ri].letters)
    old = letters[k]
    letters[k] = rng.choice([(t, e) for t in survivors for e in (1, -1) if (t, e) != old])
    rels = list(pres.relators)
    rels[ri] = Word(letters)
    return Presentation.make(pres.generators, rels, pres.provenance + " (corrupted)")
