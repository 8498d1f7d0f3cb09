"""Relaxed Potts solver: message-passing network trained by gradient descent.

Everything numerical is explicit numpy: the two layer kinds, the softmax
head, reverse-mode gradients, and the adaptive-moment optimizer. No
autodiff framework sits underneath, so the gradient tests against finite
differences are the load-bearing correctness check.

Layer semantics:
  GCN_STYLE   H' = act(A_hat @ H @ W), A_hat the symmetric renormalized
              adjacency with self-loops.
  SAGE_STYLE  H'_v = act(W_self h_v + W_neigh * mean of h_u over N(v)),
              the mean over an empty neighborhood being the zero vector.

A rectifier plus (train-mode) inverted dropout follows every hidden
layer; the final layer feeds a row-wise softmax, so outputs are
row-stochastic by construction. Node embeddings are trainable.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
import scipy.sparse as sp

from .errors import InputError, SearchExhausted
from .graphs import Graph
from .potts import (
    Coloring,
    Couplings,
    SoftAssignment,
    UniformCouplings,
    hard_energy,
    soft_loss,
    soft_loss_gradient,
)

GCN_STYLE = "GCN_STYLE"
SAGE_STYLE = "SAGE_STYLE"
ADAM = "ADAM"
ADAMW = "ADAMW"

ZERO_COST = "ZERO_COST"
PATIENCE = "PATIENCE"
MAX_EPOCHS = "MAX_EPOCHS"

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8

# below this node count a dense propagation matrix beats CSR overhead
_DENSE_PROP_LIMIT = 4096


@dataclass(frozen=True)
class Hyperparams:
    """Everything that determines a training run besides the graph itself."""

    model_kind: str
    embedding_dim: int
    hidden_dims: tuple[int, ...]
    num_colors: int
    learning_rate: float = 0.01
    dropout: float = 0.0
    max_epochs: int = 100_000
    patience: int = 500
    tolerance: float = 1e-4
    seed: int = 0
    optimizer_kind: str = ADAMW
    weight_decay: float = 0.01

    def __post_init__(self):
        object.__setattr__(self, "hidden_dims", tuple(int(d) for d in self.hidden_dims))
        if self.model_kind not in (GCN_STYLE, SAGE_STYLE):
            raise InputError(f"unknown model_kind {self.model_kind!r}")
        if self.optimizer_kind not in (ADAM, ADAMW):
            raise InputError(f"unknown optimizer_kind {self.optimizer_kind!r}")
        if self.embedding_dim < 1:
            raise InputError("embedding_dim must be positive")
        if any(d < 1 for d in self.hidden_dims):
            raise InputError("hidden_dims must be positive")
        if self.num_colors < 1:
            raise InputError("num_colors must be positive")
        if self.learning_rate <= 0:
            raise InputError("learning_rate must be positive")
        if not 0.0 <= self.dropout < 1.0:
            raise InputError("dropout must lie in [0, 1)")
        if self.max_epochs < 1 or self.patience < 1:
            raise InputError("max_epochs and patience must be positive")
        if self.tolerance < 0:
            raise InputError("tolerance must be non-negative")
        if self.weight_decay < 0:
            raise InputError("weight_decay must be non-negative")
        if self.optimizer_kind == ADAM and self.weight_decay != 0.0:
            raise InputError(
                "weight_decay requires the decoupled-decay optimizer (ADAMW)"
            )

    @property
    def layer_dims(self) -> list[tuple[int, int]]:
        dims = [self.embedding_dim, *self.hidden_dims, self.num_colors]
        return list(zip(dims[:-1], dims[1:]))


# parameter keys per layer, in draw/update order
_LAYER_KEYS = {GCN_STYLE: ("weight",), SAGE_STYLE: ("w_self", "w_neigh")}


@dataclass
class Model:
    """Trainable state for one run: embeddings, layer weights, moments."""

    kind: str
    embeddings: np.ndarray
    layers: list[dict[str, np.ndarray]]
    prop: object  # propagation operator (dense array or CSR matrix)
    opt_m: list[np.ndarray] = field(default_factory=list)
    opt_v: list[np.ndarray] = field(default_factory=list)
    step: int = 0

    def __post_init__(self):
        if not self.opt_m:
            self.opt_m = [np.zeros_like(p) for p in self.parameters()]
            self.opt_v = [np.zeros_like(p) for p in self.parameters()]

    def parameters(self) -> list[np.ndarray]:
        out = [self.embeddings]
        for layer in self.layers:
            out.extend(layer[k] for k in _LAYER_KEYS[self.kind])
        return out

    def parameter_names(self) -> list[str]:
        out = ["embeddings"]
        for i, _ in enumerate(self.layers):
            out.extend(f"layer{i}.{k}" for k in _LAYER_KEYS[self.kind])
        return out

    def set_parameters(self, values: list[np.ndarray]):
        it = iter(values)
        self.embeddings = next(it)
        for layer in self.layers:
            for k in _LAYER_KEYS[self.kind]:
                layer[k] = next(it)


def _propagation_matrix(g: Graph, kind: str):
    """GCN: D~^{-1/2}(A+I)D~^{-1/2}. SAGE: D^{-1}A with zero rows when isolated."""
    n = g.node_count
    if g.edge_count:
        ii, jj = g.edges[:, 0], g.edges[:, 1]
        rows = np.concatenate([ii, jj])
        cols = np.concatenate([jj, ii])
        vals = np.ones(len(rows))
    else:
        rows = cols = np.zeros(0, dtype=np.int64)
        vals = np.zeros(0)
    a = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
    if kind == GCN_STYLE:
        a = a + sp.eye(n, format="csr")
        d = np.asarray(a.sum(axis=1)).ravel()
        inv_sqrt = 1.0 / np.sqrt(d)
        prop = sp.diags(inv_sqrt) @ a @ sp.diags(inv_sqrt)
    else:
        d = g.degrees.astype(np.float64)
        inv = np.divide(1.0, d, out=np.zeros_like(d), where=d > 0)
        prop = sp.diags(inv) @ a
    prop = prop.tocsr()
    if n <= _DENSE_PROP_LIMIT:
        return prop.toarray()
    return prop


def init_model(g: Graph, hp: Hyperparams,
               rng: np.random.Generator | None = None) -> Model:
    """Fresh model, fully determined by hp.seed when no stream is supplied.

    Embeddings are i.i.d. uniform on [-1/sqrt(d0), 1/sqrt(d0)]; each
    weight matrix is uniform on [-1/sqrt(fan_in), 1/sqrt(fan_in)]. Draw
    order is embeddings first, then layer weights in layer order.
    """
    if g.node_count < 1:
        raise InputError("cannot build a model for an empty graph")
    if rng is None:
        rng = np.random.default_rng(hp.seed)
    bound = 1.0 / np.sqrt(hp.embedding_dim)
    emb = rng.uniform(-bound, bound, size=(g.node_count, hp.embedding_dim))
    layers = []
    for fan_in, fan_out in hp.layer_dims:
        b = 1.0 / np.sqrt(fan_in)
        layer = {
            k: rng.uniform(-b, b, size=(fan_in, fan_out))
            for k in _LAYER_KEYS[hp.model_kind]
        }
        layers.append(layer)
    return Model(
        kind=hp.model_kind,
        embeddings=emb,
        layers=layers,
        prop=_propagation_matrix(g, hp.model_kind),
    )


def _softmax_rows(z: np.ndarray) -> np.ndarray:
    shifted = z - z.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def _check_shapes(m: Model, g: Graph, hp: Hyperparams):
    if m.embeddings.shape != (g.node_count, hp.embedding_dim):
        raise InputError(
            f"model embeddings {m.embeddings.shape} do not match "
            f"(n={g.node_count}, d0={hp.embedding_dim})"
        )
    if m.kind != hp.model_kind or len(m.layers) != len(hp.layer_dims):
        raise InputError("model architecture does not match hyperparameters")


def _forward_cached(m: Model, hp: Hyperparams, train_mode: bool,
                    rng: np.random.Generator | None):
    """Run the network, keeping every intermediate needed for backward.

    Returns (probs, cache); cache entries per layer:
      h_in        input activations
      aggregated  prop @ h_in
      z           pre-activation
      relu_mask   hidden layers only
      drop_mask   hidden layers only, train mode only (inverted scaling)
    """
    h = m.embeddings
    cache = []
    last = len(m.layers) - 1
    for idx, layer in enumerate(m.layers):
        agg = m.prop @ h
        if m.kind == GCN_STYLE:
            z = agg @ layer["weight"]
        else:
            z = h @ layer["w_self"] + agg @ layer["w_neigh"]
        entry = {"h_in": h, "aggregated": agg, "z": z}
        if idx == last:
            probs = _softmax_rows(z)
            cache.append(entry)
            return probs, cache
        h = np.maximum(z, 0.0)
        entry["relu_mask"] = z > 0
        if train_mode and hp.dropout > 0.0:
            keep = 1.0 - hp.dropout
            mask = (rng.random(h.shape) < keep) / keep
            h = h * mask
            entry["drop_mask"] = mask
        cache.append(entry)
    raise AssertionError("model has no layers")


def forward(m: Model, g: Graph, hp: Hyperparams, train_mode: bool = False,
            rng: np.random.Generator | None = None) -> SoftAssignment:
    """Soft color assignment for every node; deterministic when not training."""
    _check_shapes(m, g, hp)
    if train_mode and hp.dropout > 0.0 and rng is None:
        raise InputError("train-mode forward with dropout needs a random stream")
    probs, _ = _forward_cached(m, hp, train_mode, rng)
    return SoftAssignment(probs)


def _backward_from_cache(m: Model, probs: np.ndarray, cache: list,
                         dloss_dp: np.ndarray) -> list[np.ndarray]:
    # softmax backward: dZ_i = P_i * (G_i - <G_i, P_i>)
    inner = np.sum(dloss_dp * probs, axis=1, keepdims=True)
    dz = probs * (dloss_dp - inner)
    grads_layers = []
    dh = None
    for idx in range(len(m.layers) - 1, -1, -1):
        entry = cache[idx]
        if idx != len(m.layers) - 1:
            dh_out = dh
            if "drop_mask" in entry:
                dh_out = dh_out * entry["drop_mask"]
            dz = dh_out * entry["relu_mask"]
        layer = m.layers[idx]
        if m.kind == GCN_STYLE:
            dw = entry["aggregated"].T @ dz
            dh = m.prop.T @ (dz @ layer["weight"].T)
            grads_layers.append({"weight": dw})
        else:
            dw_self = entry["h_in"].T @ dz
            dw_neigh = entry["aggregated"].T @ dz
            dh = dz @ layer["w_self"].T + m.prop.T @ (dz @ layer["w_neigh"].T)
            grads_layers.append({"w_self": dw_self, "w_neigh": dw_neigh})
    grads_layers.reverse()
    out = [dh]  # gradient w.r.t. embeddings
    for layer_grad in grads_layers:
        out.extend(layer_grad[k] for k in _LAYER_KEYS[m.kind])
    return out


def backward(m: Model, g: Graph, hp: Hyperparams,
             rng: np.random.Generator | None = None,
             couplings: Couplings | None = None):
    """Train-mode forward plus exact reverse-mode gradients.

    Returns (loss, grads) with grads parallel to m.parameters(). The
    dropout mask drawn here is shared between the forward pass and its
    backward sweep, as required for a correct gradient.
    """
    loss, grads, _ = _backward_full(m, g, hp, rng, couplings)
    return loss, grads


def _backward_full(m, g, hp, rng, couplings):
    _check_shapes(m, g, hp)
    if couplings is None:
        couplings = UniformCouplings()
    if hp.dropout > 0.0 and rng is None:
        rng = np.random.default_rng(hp.seed)
    probs, cache = _forward_cached(m, hp, train_mode=True, rng=rng)
    p = SoftAssignment(probs)
    loss = soft_loss(g, p, couplings)
    dloss_dp = soft_loss_gradient(g, p, couplings)
    grads = _backward_from_cache(m, probs, cache, dloss_dp)
    return loss, grads, p


def optimizer_step(m: Model, grads: list[np.ndarray], hp: Hyperparams) -> Model:
    """One adaptive-moment update in place; returns the same model.

    Decay rates 0.9/0.999, epsilon 1e-8. ADAMW applies decoupled weight
    decay to layer weights only; embeddings are never decayed.
    """
    params = m.parameters()
    if len(grads) != len(params):
        raise InputError(
            f"expected {len(params)} gradient arrays, got {len(grads)}"
        )
    m.step += 1
    t = m.step
    lr = hp.learning_rate
    new_values = []
    for i, (p, g_i) in enumerate(zip(params, grads)):
        m.opt_m[i] = ADAM_BETA1 * m.opt_m[i] + (1 - ADAM_BETA1) * g_i
        m.opt_v[i] = ADAM_BETA2 * m.opt_v[i] + (1 - ADAM_BETA2) * g_i**2
        m_hat = m.opt_m[i] / (1 - ADAM_BETA1**t)
        v_hat = m.opt_v[i] / (1 - ADAM_BETA2**t)
        update = m_hat / (np.sqrt(v_hat) + ADAM_EPS)
        if hp.optimizer_kind == ADAMW and i > 0:  # index 0 is the embeddings
            update = update + hp.weight_decay * p
        new_values.append(p - lr * update)
    m.set_parameters(new_values)
    return m


@dataclass
class TrainResult:
    """Best-by-(projected cost, loss) snapshot of one training run."""

    best_soft: SoftAssignment
    best_loss: float
    best_epoch: int
    best_coloring: Coloring
    best_energy: float
    epochs_run: int
    loss_history: list[float]
    stop_reason: str


def project_argmax(p: SoftAssignment) -> Coloring:
    """Most probable color per row; ties go to the smallest color index."""
    if p.matrix.shape[1] < 1:
        raise InputError("soft assignment needs at least one column")
    return Coloring(np.argmax(p.matrix, axis=1), p.matrix.shape[1])


def train(g: Graph, hp: Hyperparams,
          couplings: Couplings | None = None) -> TrainResult:
    """Full-graph training with early stopping; pure function of (g, hp).

    Each epoch: one backward pass and optimizer step, then a
    deterministic evaluation pass whose loss feeds the history and the
    patience counter, and whose argmax projection is checked for cost 0
    (under the training couplings). Stops on exact zero projected cost,
    on hp.patience epochs without improvement beyond hp.tolerance, or at
    hp.max_epochs.
    """
    if couplings is None:
        couplings = UniformCouplings()
    rng = np.random.default_rng(hp.seed)
    model = init_model(g, hp, rng=rng)
    history: list[float] = []
    best = None  # (energy, loss, epoch, soft, coloring)
    lowest_loss = np.inf
    since_improvement = 0
    stop_reason = MAX_EPOCHS
    for epoch in range(hp.max_epochs):
        _, grads, p_train = _backward_full(model, g, hp, rng, couplings)
        if hp.dropout > 0.0:
            p_eval = forward(model, g, hp)
        else:
            p_eval = p_train  # no dropout: train and eval passes coincide
        loss = soft_loss(g, p_eval, couplings)
        history.append(loss)
        coloring = project_argmax(p_eval)
        energy = hard_energy(g, coloring, couplings)
        if best is None or (energy, loss) < (best[0], best[1]):
            best = (energy, loss, epoch, p_eval, coloring)
        if loss < lowest_loss - hp.tolerance:
            lowest_loss = loss
            since_improvement = 0
        else:
            since_improvement += 1
        if energy == 0.0:
            stop_reason = ZERO_COST
            break
        if since_improvement >= hp.patience:
            stop_reason = PATIENCE
            break
        optimizer_step(model, grads, hp)
    energy, loss, epoch, p_best, c_best = best
    return TrainResult(
        best_soft=p_best,
        best_loss=loss,
        best_epoch=epoch,
        best_coloring=c_best,
        best_energy=energy,
        epochs_run=len(history),
        loss_history=history,
        stop_reason=stop_reason,
    )


SEQUENTIAL = "SEQUENTIAL"
BINARY = "BINARY"


def _compact_colors(c: Coloring, q: int) -> Coloring:
    used = np.unique(c.assignment)
    remap = np.zeros(used.max() + 1 if len(used) else 1, dtype=np.int64)
    remap[used] = np.arange(len(used))
    return Coloring(remap[c.assignment], q)


def find_q_upper(g: Graph, hp_template: Hyperparams, strategy: str = SEQUENTIAL,
                 q_max: int = 32, refine=None,
                 observer=None) -> tuple[int, Coloring]:
    """Smallest q <= q_max for which training found a zero-cost coloring.

    This is a heuristic upper bound on the chromatic number: failure at
    some q proves nothing, which also means BINARY can return a larger
    bound than SEQUENTIAL. An optional refine(g, coloring) -> Coloring
    hook is consulted after each failed attempt; its result only counts
    when it is proper and fits within q colors. An optional
    observer(q, cost, feasible) is called after every attempt, in search
    order, so callers can log the trajectory.

    Raises SearchExhausted (carrying the best coloring seen) when no
    feasible q is found.
    """
    if q_max < 1:
        raise InputError("q_max must be at least 1")
    if strategy not in (SEQUENTIAL, BINARY):
        raise InputError(f"unknown search strategy {strategy!r}")
    best_cost = np.inf
    best_coloring = None

    def attempt(q: int) -> Coloring | None:
        nonlocal best_cost, best_coloring
        hp = replace(hp_template, num_colors=q)
        result = train(g, hp)
        if result.best_energy < best_cost:
            best_cost = result.best_energy
            best_coloring = result.best_coloring
        out = None
        if result.best_energy == 0.0:
            out = result.best_coloring
        elif refine is not None:
            fixed = refine(g, result.best_coloring)
            if (
                fixed is not None
                and hard_energy(g, fixed) == 0.0
                and fixed.distinct_colors() <= q
            ):
                out = _compact_colors(fixed, q)
        if observer is not None:
            cost = 0.0 if out is not None else result.best_energy
            observer(q, cost, out is not None)
        return out

    if strategy == SEQUENTIAL:
        for q in range(1, q_max + 1):
            coloring = attempt(q)
            if coloring is not None:
                return q, coloring
    else:
        lo, hi = 1, q_max
        found = None
        while lo <= hi:
            mid = (lo + hi) // 2
            coloring = attempt(mid)
            if coloring is not None:
                found = (mid, coloring)
                hi = mid - 1
            else:
                lo = mid + 1
        if found is not None:
            return found
    raise SearchExhausted(
        f"no zero-cost coloring found for q <= {q_max} "
        f"(best cost {best_cost})",
        best=best_coloring,
        energy=float(best_cost) if best_coloring is not None else None,
    )
