"""
Servicio de dominio: probabilidad de outage en forma cerrada.

Selección de los K mejores enlaces directos y de hasta L relés bajo
Rayleigh independiente no idéntico. Los eventos "exactamente η enlaces
directos útiles" y "exactamente ℓ relés útiles" se calculan como
eventos de conteo exacto sobre subconjuntos (Poisson-binomial).
"""

import itertools
import math
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from numpy.typing import NDArray

from src.domain.exceptions import DomainError, GuardError, InconsistencyError
from src.domain.model.relay_network import OutageBranch, OutageResult, RelayNetwork

MAX_ENUMERATION = 10
_ROUNDING = 1e-12


def _guard(network: RelayNetwork) -> None:
    if network.n_sources > MAX_ENUMERATION or network.n_relays > MAX_ENUMERATION:
        raise GuardError(
            f"Closed form enumerates subsets: N and M must be <= {MAX_ENUMERATION}, "
            f"got N={network.n_sources}, M={network.n_relays}"
        )


def _checked(value: float, what: str) -> float:
    if value < -_ROUNDING or value > 1.0 + _ROUNDING or not math.isfinite(value):
        raise InconsistencyError(f"{what} = {value!r} lies outside [0, 1]")
    return min(max(value, 0.0), 1.0)


def gamma_threshold(r0: float) -> float:
    """γ_th = 2^R₀ − 1."""
    if r0 < 0.0:
        raise DomainError(f"Target rate must be >= 0, got {r0}")
    return math.expm1(r0 * math.log(2.0))


def ordered_prob(lambdas: Sequence[float]) -> float:
    """
    Pr{X₁ > X₂ > … > X_n} para exponenciales independientes de tasas λ.

    Π_{v=2}^{n} λ_v / (λ₁ + Σ_{i=2}^{v} λ_i); para tasas iguales vale 1/n!.
    """
    rates = [float(x) for x in lambdas]
    if any(x <= 0.0 for x in rates):
        raise DomainError("Exponential rates must be > 0")

    probability = 1.0
    cumulative = rates[0] if rates else 0.0
    for rate in rates[1:]:
        cumulative += rate
        probability *= rate / cumulative
    return probability


def link_outage(lam: float, gamma_th: float) -> float:
    """Pr{γ < γ_th} = 1 − e^{−λγ_th} para un enlace exponencial."""
    if lam <= 0.0:
        raise DomainError("Link rate must be > 0")
    if gamma_th < 0.0:
        raise DomainError("Threshold must be >= 0")
    return -math.expm1(-lam * gamma_th)


def exact_count(success: Sequence[float]) -> NDArray[np.float64]:
    """
    Distribución del número de éxitos de ensayos independientes.

    Returns:
        Vector de longitud n+1 con Pr{exactamente c éxitos}
    """
    dist = np.zeros(len(success) + 1)
    dist[0] = 1.0
    for q in success:
        dist[1:] = dist[1:] * (1.0 - q) + dist[:-1] * q
        dist[0] *= 1.0 - q
    return dist


def lambda_given_A(network: RelayNetwork, subset: Iterable[int], m: int) -> float:
    """λ_{m|A} = Σ_{n∈A} λ_{S_nR_m} + λ_{R_mD}."""
    if not 0 <= m < network.n_relays:
        raise DomainError(f"Relay index {m} out of range [0, {network.n_relays})")
    members = list(subset)
    return math.fsum([*network.lam_sr[members, m].tolist(), float(network.lam_rd[m])])


def prob_eps_eta(network: RelayNetwork, eta: int) -> float:
    """Pr{exactamente η de los N enlaces directos no están en outage}."""
    if not 0 <= eta <= network.n_sources:
        raise DomainError(f"eta must lie in [0, {network.n_sources}]")
    gth = gamma_threshold(network.r0)
    success = [math.exp(-float(lam) * gth) for lam in network.lam_sd]
    return _checked(float(exact_count(success)[eta]), f"Pr{{eps_{eta}}}")


def _top_set_probability(rates: tuple[float, ...], members: frozenset[int]) -> float:
    """
    Pr{los índices de `members` son los |members| mayores}.

    Suma sobre todas las ordenaciones compatibles: se eliminan primero,
    de menor a mayor, los que no pertenecen al conjunto; las
    ordenaciones internas del conjunto suman 1.
    """
    top_rate = math.fsum(rates[i] for i in members)
    rest = frozenset(range(len(rates))) - members

    @lru_cache(maxsize=None)
    def eliminate(remaining: frozenset[int]) -> float:
        if not remaining:
            return 1.0
        total = top_rate + math.fsum(rates[i] for i in remaining)
        return math.fsum(rates[i] / total * eliminate(remaining - {i}) for i in remaining)

    return eliminate(rest)


def prob_A(network: RelayNetwork, subset: Iterable[int]) -> float:
    """
    Pr{los K mejores enlaces directos son exactamente A}.

    Raises:
        GuardError: Si N > 10
        DomainError: Si |A| ≠ K
    """
    _guard(network)
    members = frozenset(int(n) for n in subset)
    if len(members) != network.k_sel:
        raise DomainError(f"Selected set must have K={network.k_sel} members")
    rates = tuple(float(x) for x in network.lam_sd)
    return _checked(_top_set_probability(rates, members), "Pr{A}")


def _relay_count_given_A(network: RelayNetwork, subset: Sequence[int]) -> NDArray[np.float64]:
    gth = gamma_threshold(network.r0)
    success = [
        math.exp(-lambda_given_A(network, subset, m) * gth) for m in range(network.n_relays)
    ]
    return exact_count(success)


def _selected_sets(network: RelayNetwork) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(network.n_sources), network.k_sel))


def prob_V_ell(network: RelayNetwork, ell: int) -> float:
    """Pr{exactamente ℓ relés útiles} = Σ_A Pr{V_ℓ | A}·Pr{A}."""
    _guard(network)
    if not 0 <= ell <= network.n_relays:
        raise DomainError(f"ell must lie in [0, {network.n_relays}]")
    terms = [
        float(_relay_count_given_A(network, subset)[ell]) * prob_A(network, subset)
        for subset in _selected_sets(network)
    ]
    return _checked(math.fsum(terms), f"Pr{{V_{ell}}}")


def _branch(network: RelayNetwork) -> OutageBranch:
    return OutageBranch.K_GT_L if network.k_sel > network.l_sel else OutageBranch.K_LE_L


def _integral_exp(rate: float, upper: float) -> float:
    """∫_0^upper e^{−rate·y} dy."""
    if rate == 0.0:
        return upper
    return -math.expm1(-rate * upper) / rate


def _subsets(items: Sequence[int]) -> Iterable[tuple[int, ...]]:
    return itertools.chain.from_iterable(
        itertools.combinations(items, size) for size in range(len(items) + 1)
    )


def _below_threshold_ordered(
    rates: Sequence[float], upper: Sequence[int], lower: Sequence[int], gth: float
) -> float:
    """
    Pr{todas las variables de upper ∪ lower ≤ γ_th y min(upper) > max(lower)}.

    Se integra sobre el mínimo de `upper` y se expanden los productos
    por inclusión-exclusión.
    """
    if not upper:
        return math.prod(-math.expm1(-rates[r] * gth) for r in lower)

    terms: list[float] = []
    for i in upper:
        others = [u for u in upper if u != i]
        for capped in _subsets(others):
            free = sum(rates[u] for u in others if u not in capped)
            cap_rate = sum(rates[u] for u in capped)
            for excluded in _subsets(list(lower)):
                rate = rates[i] + free + sum(rates[r] for r in excluded)
                sign = -1.0 if (len(capped) + len(excluded)) % 2 else 1.0
                terms.append(
                    sign * rates[i] * math.exp(-cap_rate * gth) * _integral_exp(rate, gth)
                )
    return math.fsum(terms)


def prob_A_and_eta(network: RelayNetwork, subset: Sequence[int], eta: int) -> float:
    """
    Pr{el conjunto seleccionado es A y exactamente η < K enlaces directos son útiles}.

    Con η < K los η enlaces útiles pertenecen a A; se suma sobre qué
    subconjunto T ⊆ A de tamaño η supera el umbral.
    """
    _guard(network)
    if not 0 <= eta < network.k_sel:
        raise DomainError(f"eta must lie in [0, K) for the joint event, got {eta}")

    gth = gamma_threshold(network.r0)
    rates = [float(x) for x in network.lam_sd]
    members = list(subset)
    others = [n for n in range(network.n_sources) if n not in members]

    terms = []
    for above in itertools.combinations(members, eta):
        below = [n for n in members if n not in above]
        above_prob = math.exp(-gth * sum(rates[n] for n in above))
        terms.append(above_prob * _below_threshold_ordered(rates, below, others, gth))
    return _checked(math.fsum(terms), "Pr{A, eps}")


def _printed_form(network: RelayNetwork) -> tuple[float, list[tuple[int, float]]]:
    k, l_sel = network.k_sel, network.l_sel
    eps = [prob_eps_eta(network, eta) for eta in range(network.n_sources + 1)]
    relays = [prob_V_ell(network, ell) for ell in range(network.n_relays + 1)]

    terms: list[tuple[int, float]] = []
    if k > l_sel:
        terms.extend((eta, eps[eta]) for eta in range(0, k - l_sel))
    for missing in range(1, min(k, l_sel) + 1):
        terms.append((k - missing, eps[k - missing] * math.fsum(relays[:missing])))

    return math.fsum(value for _, value in terms), sorted(terms)


def _exact_form(network: RelayNetwork) -> tuple[float, list[tuple[int, float]]]:
    k, l_sel = network.k_sel, network.l_sel
    per_eta = [0.0] * k
    parts: list[list[float]] = [[] for _ in range(k)]

    for subset in _selected_sets(network):
        relays = _relay_count_given_A(network, subset)
        for eta in range(k):
            missing = k - eta
            short = 1.0 if missing > l_sel else math.fsum(relays[:missing].tolist())
            parts[eta].append(prob_A_and_eta(network, subset, eta) * short)

    for eta in range(k):
        per_eta[eta] = math.fsum(parts[eta])
    return math.fsum(per_eta), list(enumerate(per_eta))


def outage_probability(network: RelayNetwork, exact_selection: bool = False) -> OutageResult:
    """
    Probabilidad de outage: hay outage cuando η + ℓ < K.

    Por defecto usa la estructura cerrada por ramas (K > L y K ≤ L), que
    trata η y ℓ como independientes. Con `exact_selection` se condiciona
    conjuntamente sobre el conjunto seleccionado A; coincide con la
    anterior si los enlaces directos son idénticamente distribuidos y es
    exacta para el protocolo simulado en cualquier caso.

    Raises:
        GuardError: Si N o M > 10
        InconsistencyError: Si el resultado sale de [0, 1] más allá del redondeo
    """
    _guard(network)
    value, terms = _exact_form(network) if exact_selection else _printed_form(network)
    return OutageResult(
        p_out=_checked(value, "P_out"),
        branch=_branch(network),
        terms=tuple((int(eta), float(v)) for eta, v in terms),
        exact_selection=exact_selection,
    )
