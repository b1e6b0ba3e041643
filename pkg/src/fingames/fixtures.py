"""Named example arenas and pushdown processes, with the claim each one illustrates.

Choices not forced by the construction itself are stated in each fixture's note.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .arena import ADAM, EVE, Arena, buchi_arena, make_arena, validate
from .conditions import BndParity, BndUniformBuchi, Condition, UniformParity
from .errors import BadParams, UnknownExample
from .pushdown import Configuration, PushdownProcess, Transition

PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def primorial(n: int) -> int:
    """Product of the first ``n`` primes."""
    out = 1
    for p in PRIMES[:n]:
        out *= p
    return out


@dataclass
class Claim:
    condition: str
    start: object
    expected: object
    note: str = ""


@dataclass
class Example:
    name: str
    kind: str  # "arena" or "pushdown"
    obj: object
    claims: list[Claim] = field(default_factory=list)
    start: object = None
    note: str = ""
    # (player, condition) for memory experiments
    check: tuple[int, Condition] | None = None


@dataclass(frozen=True)
class Entry:
    name: str
    kind: str
    about: str
    params: dict
    build: Callable[..., Example]


# ---------------------------------------------------------------- finite arenas


def fig3() -> Example:
    # every vertex belongs to Adam; only v1 is outside F
    a = buchi_arena([ADAM, ADAM, ADAM], [[0, 1], [2], [2]], [0, 2], name="fig3",
                    labels=["v0", "v1", "v2"])
    claims = [
        Claim("bnd-uniform-buchi N=0", "region", {2}),
        Claim("attractor of that region", "region", {1, 2}),
        Claim("uniform-buchi N=0", "region", {0, 1, 2}),
    ]
    return Example("fig3", "arena", a, claims, 0, "all vertices owned by Adam")


def adam_memory(N: int = 3) -> Example:
    """Adam picks ``i``, Eve picks a path ``j != i`` whose ``j``-th vertex is the only one in ``F``."""
    if N < 2:
        raise BadParams("adam-memory needs N >= 2")
    owner, succ, labels, F = [ADAM], [[]], ["c"], []
    path_start = {}
    choice = {}
    for i in range(1, N + 1):
        choice[i] = len(owner)
        owner.append(EVE)
        succ.append([])
        labels.append(f"v!{i}")
    for j in range(1, N + 1):
        path_start[j] = len(owner)
        for k in range(1, N + 1):
            v = len(owner)
            owner.append(EVE)
            succ.append([v + 1] if k < N else [0])
            labels.append(f"p{j}.{k}")
            if k == j:
                F.append(v)
    succ[0] = [choice[i] for i in range(1, N + 1)]
    for i in range(1, N + 1):
        succ[choice[i]] = [path_start[j] for j in range(1, N + 1) if j != i]
    a = buchi_arena(owner, succ, F, name=f"adam-memory{N}", labels=labels)
    claims = [Claim(f"co-bnd-uniform-buchi N={N + 1}", 0, "Adam wins; positional strategies do not",
                    f"Adam memory between {N - 1} and {N}")]
    return Example(f"adam-memory({N})", "arena", a, claims, 0, "paths shared by all choice vertices",
                   (ADAM, BndUniformBuchi(N + 1)))


def boundunknown(n: int = 4) -> Example:
    """Top path of ``F`` vertices; branch ``i`` enters a loop of length ``i`` with one vertex in ``F``.

    Truncated after ``n`` branches: the last top vertex can only take its branch.
    """
    if n < 1:
        raise BadParams("boundunknown needs n >= 1")
    owner, succ, labels, F = [], [], [], []

    def new(label, in_f):
        owner.append(ADAM)
        succ.append([])
        labels.append(label)
        if in_f:
            F.append(len(owner) - 1)
        return len(owner) - 1

    top = [new("v0", True)] + [new(f"v{i}", True) for i in range(1, n + 1)]
    for i in range(n):
        succ[top[i]].append(top[i + 1])
    for i in range(1, n + 1):
        loop = [new(f"u{i}", True)] + [new(f"u{i}.{k}", False) for k in range(1, i)]
        for a, b in zip(loop, loop[1:] + loop[:1]):
            succ[a].append(b)
        succ[top[i]].append(loop[0])
    a = buchi_arena(owner, succ, F, name=f"boundunknown{n}", labels=labels)
    claims = [Claim("uniform-buchi", 0, f"least bound {n - 1}", "grows with the truncation"),
              Claim("finitary-buchi", 0, True)]
    return Example(f"boundunknown({n})", "arena", a, claims, 0, "truncated after n branches")


NEUTRAL = 4


def uniparity() -> Example:
    """Adam requests 3 or 1, Eve then picks color 2 or color 0 (one step later)."""
    # v0..v7; unlabeled vertices get the neutral even color 4
    owner = [ADAM, EVE, EVE, EVE, EVE, EVE, EVE, EVE]
    succ = [[1, 3], [2], [4], [4], [5, 6], [5], [7], [7]]
    color = [NEUTRAL, 3, NEUTRAL, 1, NEUTRAL, 2, NEUTRAL, 0]
    a = make_arena(owner, succ, color, 4, "uniparity", [f"v{i}" for i in range(8)])
    claims = [Claim("uniform-parity N=3", 0, "needs 2 memory states",
                    "answer 3 with 2 and 1 with 0; waiting time 3 in both cases")]
    return Example("uniparity", "arena", a, claims, 0, "blank vertices colored 4", (EVE, UniformParity(3)))


def bndparity_rounds(n: int = 3) -> Example:
    """Round ``i``: Adam requests 1 directly or 3 followed by a path of length ``i``; Eve answers 0 or 2."""
    if n < 1:
        raise BadParams("bndparity-rounds needs n >= 1")
    owner, succ, color, labels = [], [], [], []

    def new(o, c, label):
        owner.append(o)
        succ.append([])
        color.append(c)
        labels.append(label)
        return len(owner) - 1

    heads = [new(ADAM, NEUTRAL, f"v{i}") for i in range(1, n + 1)]
    end = new(EVE, 0, "end")
    succ[end] = [end]
    for i, head in enumerate(heads, 1):
        one = new(EVE, 1, f"r{i}.1")
        three = new(EVE, 3, f"r{i}.3")
        meet = new(EVE, NEUTRAL, f"c{i}")
        path = [new(EVE, NEUTRAL, f"r{i}.3.{k}") for k in range(1, i)]
        chain = [three] + path + [meet]
        for a, b in zip(chain, chain[1:]):
            succ[a] = [b]
        succ[one] = [meet]
        succ[head] = [one, three]
        zero = new(EVE, 0, f"r{i}.0")
        two = new(EVE, 2, f"r{i}.2")
        succ[two] = [two]
        succ[meet] = [zero, two]
        succ[zero] = [heads[i] if i < n else end]
    a = make_arena(owner, succ, color, 4, f"bndparity-rounds{n}", labels)
    claims = [Claim("bnd-parity", 0, "needs 2 memory states on the unbounded arena",
                    "on a truncation the answer-0-always strategy already wins")]
    return Example(f"bndparity-rounds({n})", "arena", a, claims, 0,
                   "truncated after n rounds into a color-0 self-loop", (EVE, BndParity()))


# ---------------------------------------------------------------- pushdown processes


def _process(name, spec_states, alphabet, maxcolor=1) -> PushdownProcess:
    states = [s for s, _, _ in spec_states]
    return PushdownProcess(name, states, {s: o for s, o, _ in spec_states},
                           {s: c for s, _, c in spec_states}, list(alphabet), [], maxcolor)


def round_robin() -> Example:
    p = _process("round-robin", [("F", ADAM, 0), ("pop", ADAM, 1)], ["a"])
    p.add("F", "*", "push", "a", "F")
    p.add("F", "*", "skip", None, "pop")
    p.add("pop", None, "pop", "a", "pop")
    p.add("pop", None, "skip", None, "F")
    claims = [Claim("buchi", "F:⊥", True, "Adam cannot avoid F forever"),
              Claim("finitary-buchi", "F:⊥", False, "on the infinite arena only")]
    return Example("round-robin", "pushdown", p, claims, Configuration("F"), "both states owned by Adam")


def credit() -> Example:
    p = _process("credit", [("q0", ADAM, 0), ("q1", ADAM, 1), ("q2", ADAM, 0), ("q3", ADAM, 1),
                            ("q4", ADAM, 0)], ["a", "b"])
    p.add("q0", "*", "push", "a", "q0")
    p.add("q0", "*", "skip", None, "q1")
    p.add("q1", None, "pop", "a", "q2")
    p.add("q1", "*", "skip", None, "q4")
    p.add("q2", "*", "push", "b", "q2")
    p.add("q2", "*", "skip", None, "q3")
    p.add("q3", None, "pop", "b", "q3")
    p.add("q3", "*", "skip", None, "q1")
    p.add("q4", "*", "skip", None, "q4")
    claims = [Claim("uniform-buchi N=0", "q0:⊥", True),
              Claim("bnd-uniform-buchi", "q0:⊥", False, "for every N")]
    return Example("credit", "pushdown", p, claims, Configuration("q0"), "all states owned by Adam")


def switch() -> Example:
    p = _process("switch", [("q", EVE, 1), ("F", ADAM, 0), ("p", ADAM, 1)], ["a"])
    p.add("q", None, "pop", "a", "q")
    p.add("q", "*", "skip", None, "F")
    p.add("F", "*", "push", "a", "q")
    p.add("F", None, "pop", "a", "p")
    p.add("p", None, "pop", "a", "p")
    p.add("p", "*", "skip", None, "F")
    claims = [Claim("uniform-buchi", "q:⊥", "least bound 2")]
    return Example("switch", "pushdown", p, claims, Configuration("q"))


def bincounter(n: int = 3, k: int = 2) -> Example:
    """Deterministic ``n``-digit base-``k`` counter; only ``F`` is in the target set."""
    if n < 2 or k < 2:
        raise BadParams("bincounter needs n >= 2 and k >= 2")
    digits = [str(x) for x in range(k)]
    hi = digits[-1]
    states = [("F", EVE, 0)] + [(f"q{j}", EVE, 1) for j in range(1, n + 1)]
    states += [(f"p0.{x}", EVE, 1) for x in digits[:-1]]
    states += [(f"p{i}", EVE, 1) for i in range(1, n)]
    states += [(f"r{i}.{x}", EVE, 1) for i in range(1, n) for x in digits[:-1]]
    states += [(f"s{i}", EVE, 1) for i in range(1, n)]
    p = _process(f"bincounter{n}" + ("" if k == 2 else f"b{k}"), states, digits)
    p.add("F", "*", "push", "0", "q1")
    for j in range(1, n - 1):
        p.add(f"q{j}", "*", "push", "0", f"q{j + 1}")
    if n > 1:
        p.add(f"q{n - 1}", "*", "push", "0", f"q{n}")
    for x in digits[:-1]:
        # lowest digit below the maximum: increment it in place
        p.add(f"q{n}", None, "pop", x, f"p0.{x}")
        p.add(f"p0.{x}", "*", "push", str(int(x) + 1), f"q{n}")
    p.add(f"q{n}", None, "pop", hi, "p1")
    for i in range(1, n):
        if i < n - 1:
            p.add(f"p{i}", None, "pop", hi, f"p{i + 1}")
        else:
            p.add(f"p{i}", None, "pop", hi, "F")
        for x in digits[:-1]:
            p.add(f"p{i}", None, "pop", x, f"r{i}.{x}")
            p.add(f"r{i}.{x}", "*", "push", str(int(x) + 1), f"s{i}")
        if i > 1:
            p.add(f"s{i}", "*", "push", "0", f"s{i - 1}")
    p.add("s1", "*", "push", "0", f"q{n}")
    claims = [Claim("max F-gap", "F:⊥", f"about {k}^{n} increments", "deterministic")]
    return Example(f"bincounter({n})", "pushdown", p, claims, Configuration("F"))


def _prime_checks(p: PushdownProcess, n: int, entry: str, symbols, success: str, tag: str = ""):
    """Adam checks that the stack height is a multiple of each of the first ``n`` primes.

    From ``entry`` a pop enters position 1 of the loop for prime ``p_k``; the
    loop pops one symbol per step.  Position 0 on the empty stack goes to
    ``success``; any other position on the empty stack goes to the reject sink.
    """
    for k, prime in enumerate(PRIMES[:n]):
        pos = [f"chk{tag}{prime}.{j}" for j in range(prime)]
        for s in pos:
            p.states.append(s)
            p.owner[s] = ADAM
            p.color[s] = 1
        for x in symbols:
            p.add(entry, None, "pop", x, pos[1 % prime])
            for j in range(prime):
                p.add(pos[j], None, "pop", x, pos[(j + 1) % prime])
        p.add(pos[0], None, "skip", None, success)
        for j in range(1, prime):
            p.add(pos[j], None, "skip", None, "reject")


def onecounter(n: int = 2) -> Example:
    """Eve pushes a block of ``a``; Adam checks its length against each of the first ``n`` primes."""
    if not 1 <= n <= len(PRIMES):
        raise BadParams(f"onecounter needs 1 <= n <= {len(PRIMES)}")
    p = _process(f"onecounter{n}", [("i", EVE, 1), ("c", ADAM, 1), ("F", EVE, 0),
                                    ("reject", ADAM, 1)], ["a"])
    p.add("i", "*", "push", "a", "i")
    p.add("i", "a", "skip", None, "c")
    p.add("F", "*", "skip", None, "i")
    p.add("reject", "*", "skip", None, "reject")
    _prime_checks(p, n, "c", ["a"], "F")
    q = primorial(n)
    claims = [Claim("uniform-buchi", "i:⊥", f"least bound at least {q}",
                    f"block length {q} gives the bound {2 * q + 2}")]
    return Example(f"onecounter({n})", "pushdown", p, claims, Configuration("i"),
                   "a failed check enters a non-F sink")


def doubleexp(n: int = 1) -> Example:
    """Eve pushes zeros, then the stack is incremented as a binary number with Eve rebuilding the zeros."""
    if not 1 <= n <= len(PRIMES):
        raise BadParams(f"doubleexp needs 1 <= n <= {len(PRIMES)}")
    p = _process(f"doubleexp{n}", [("i", EVE, 1), ("choix", ADAM, 1), ("s", EVE, 1),
                                   ("int", EVE, 1), ("c", EVE, 1), ("F", EVE, 0),
                                   ("reject", ADAM, 1)], ["0", "1"])
    p.add("i", "*", "push", "0", "i")
    p.add("i", "0", "skip", None, "choix")
    p.add("choix", "*", "skip", None, "s")
    p.add("s", None, "pop", "1", "s")
    p.add("s", None, "pop", "0", "int")
    p.add("s", None, "skip", None, "c")
    p.add("int", "*", "push", "1", "c")
    p.add("c", "*", "push", "0", "c")
    p.add("c", "0", "skip", None, "choix")
    p.add("c", "1", "skip", None, "choix")
    p.add("c", None, "skip", None, "F")
    p.add("F", "*", "skip", None, "i")
    p.add("reject", "*", "skip", None, "reject")
    _prime_checks(p, n, "choix", ["0", "1"], "F")
    claims = [Claim("uniform-buchi", "i:⊥", f"least bound of order 2^{primorial(n)}", "trend only")]
    return Example(f"doubleexp({n})", "pushdown", p, claims, Configuration("i"),
                   "s on the empty stack moves to c; a passed check restarts through F")


def nested(n: int = 1, k: int = 2) -> Example:
    """Nested counters over blocks of ``a_i``/``b_i`` separated by ``#`` (a sketch, see note)."""
    if not 1 <= n <= len(PRIMES) or k < 1:
        raise BadParams("nested needs 1 <= n and k >= 1")
    A = [f"a{i}" for i in range(1, k + 1)]
    B = [f"b{i}" for i in range(1, k + 1)]
    sym = []
    for a, b in zip(A, B):
        sym += [a, b]
    p = _process(f"nested{n}.{k}", [("F", EVE, 0), ("reject", ADAM, 1), ("chk", EVE, 1)],
                 sym + ["#"])
    p.add("reject", "*", "skip", None, "reject")
    p.add("F", "*", "skip", None, "init1")
    for i in range(1, k + 1):
        a, b = f"a{i}", f"b{i}"
        for name, o in ((f"init{i}", EVE), (f"d{i}", ADAM), (f"v{i}", EVE), (f"int{i}", EVE),
                        (f"c{i}", EVE), (f"e{i}", ADAM), (f"chk{i}", ADAM)):
            p.states.append(name)
            p.owner[name] = o
            p.color[name] = 1
        p.add(f"init{i}", "*", "push", a, f"init{i}")
        p.add(f"init{i}", a, "skip", None, f"d{i}")
        p.add(f"d{i}", "*", "skip", None, "chk")
        p.add(f"d{i}", "*", "skip", None, f"v{i}")
        # increment of block i
        p.add(f"v{i}", None, "pop", b, f"v{i}")
        p.add(f"v{i}", None, "pop", a, f"int{i}")
        if i > 1:
            p.add(f"v{i}", None, "pop", "#", f"v{i - 1}")
        else:
            p.add(f"v{i}", None, "skip", None, "F")
        p.add(f"int{i}", "*", "push", b, f"c{i}")
        p.add(f"c{i}", "*", "push", a, f"c{i}")
        for top in (a, b):
            p.add(f"c{i}", top, "skip", None, f"e{i}")
        p.add(f"e{i}", "*", "skip", None, "chk")
        if i < k:
            p.add(f"e{i}", "*", "push", "#", f"init{i + 1}")
        else:
            p.add(f"e{i}", "*", "skip", None, f"v{k}")
        # Eve names the block on top, Adam checks its length with a prime
        p.add("chk", "*", "skip", None, f"chk{i}")
        nxt = f"chk{i - 1}" if i > 1 else None
        for prime in PRIMES[:n]:
            pos = [f"chk{i}.{prime}.{j}" for j in range(prime)]
            for s in pos:
                p.states.append(s)
                p.owner[s] = ADAM
                p.color[s] = 1
            for x in (a, b):
                p.add(f"chk{i}", None, "pop", x, pos[1 % prime])
                for j in range(prime):
                    p.add(pos[j], None, "pop", x, pos[(j + 1) % prime])
            if nxt is not None:
                p.add(pos[0], None, "pop", "#", nxt)
            else:
                p.add(pos[0], None, "skip", None, "F")
            for j in range(prime):
                for top in [None, "#"] + [s for s in sym if s not in (a, b)]:
                    if j == 0 and (top == "#" if nxt else top is None):
                        continue
                    p.add(pos[j], top, "skip", None, "reject")
        for top in [None, "#"] + [s for s in sym if s not in (a, b)]:
            p.add(f"chk{i}", top, "skip", None, "reject")
    _complete_process(p)
    claims = [Claim("uniform-buchi", "init1:⊥", f"least bound of order 2^({k}*{primorial(n)})", "trend only")]
    return Example(f"nested({n},{k})", "pushdown", p, claims, Configuration("init1"),
                   "sketched construction; increments always act on the block on top; "
                   "stuck configurations go to the reject sink")


def _complete_process(p: PushdownProcess) -> None:
    """Send every (state, top) pair without a move to the reject sink."""
    for q in p.states:
        for top in [None] + p.alphabet:
            c = Configuration(q, (top,) if top is not None else ())
            if not p.applicable(c):
                p.transitions.append(Transition(q, top, "skip", None, "reject"))


# ---------------------------------------------------------------- catalog


CATALOG: dict[str, Entry] = {
    e.name: e for e in [
        Entry("round-robin", "pushdown", "Adam-only push/pop loop: F recurs, but gaps grow on the infinite arena",
              {}, round_robin),
        Entry("fig3", "arena", "bounded region and its attractor are strictly smaller than the uniform region", {}, fig3),
        Entry("adam-memory", "arena", "Adam must remember the last choice to break the bound", {"N": 3}, adam_memory),
        Entry("boundunknown", "arena", "least uniform bound grows with the truncation", {"n": 4}, boundunknown),
        Entry("bndparity-rounds", "arena", "each round Adam picks a short or a long request (truncated)", {"n": 3},
              bndparity_rounds),
        Entry("uniparity", "arena", "the right answer depends on which request was made", {}, uniparity),
        Entry("credit", "pushdown", "bound 0 in the limit, yet no uniform bound from the start", {}, credit),
        Entry("switch", "pushdown", "Eve keeps the stack low to reach bound 2", {}, switch),
        Entry("bincounter", "pushdown", "deterministic counter whose F-gaps double with each digit", {"n": 3, "k": 2},
              bincounter),
        Entry("onecounter", "pushdown", "Adam checks a block length against small primes", {"n": 2}, onecounter),
        Entry("doubleexp", "pushdown", "binary counter over a prime-checked block", {"n": 1}, doubleexp),
        Entry("nested", "pushdown", "nested counters over several alphabets (sketch)", {"n": 1, "k": 2}, nested),
    ]
}


def names() -> list[str]:
    return list(CATALOG)


def listing() -> list[str]:
    return [f"{e.name}\t{e.kind}\t{e.params}\t{e.about}" for e in CATALOG.values()]


def build(name: str, **params) -> Example:
    if name not in CATALOG:
        raise UnknownExample(f"unknown example {name!r}")
    entry = CATALOG[name]
    bad = set(params) - set(entry.params)
    if bad:
        raise BadParams(f"{name} takes no parameter {sorted(bad)}")
    args = dict(entry.params)
    args.update({k: int(v) for k, v in params.items()})
    ex = entry.build(**args)
    if ex.kind == "arena":
        problems = validate(ex.obj)
        if problems:
            raise BadParams(f"{name} is not a legal arena: {problems}")
    return ex


# ---------------------------------------------------------------- random corpus


def random_arena(seed: int, max_vertices: int = 6, max_out: int = 3, max_color: int = 3) -> Arena:
    """Seeded random arena; colors in ``[0..d]`` with ``d`` drawn in ``[1..max_color]``."""
    rng = random.Random(seed)
    n = rng.randint(1, max_vertices)
    d = rng.randint(1, max_color)
    owner = [rng.randint(0, 1) for _ in range(n)]
    succ = [rng.sample(range(n), rng.randint(1, min(max_out, n))) for _ in range(n)]
    color = [rng.randint(0, d) for _ in range(n)]
    return make_arena(owner, succ, color, d, f"random{seed}")


CORPUS_SEEDS = range(200)
