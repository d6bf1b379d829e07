"""Servicio de dominio: oráculo Monte-Carlo del protocolo de selección."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from src.domain.model.relay_network import MonteCarloEstimate, RelayNetwork
from src.domain.service.outage import gamma_threshold

logger = logging.getLogger(__name__)

CHUNK_SIZE = 100_000


def _count_outages(network: RelayNetwork, trials: int, rng: np.random.Generator) -> int:
    """
    Simula `trials` realizaciones y cuenta outages.

    Protocolo: se eligen las K fuentes de mayor SNR directa; un relé es
    útil si el mínimo entre los enlaces fuente seleccionada→relé y
    relé→destino supera el umbral; se usan hasta L relés útiles. Hay
    outage si (fuentes útiles seleccionadas) + min(ℓ, L) < K.
    """
    gth = gamma_threshold(network.r0)
    n, m, k = network.n_sources, network.n_relays, network.k_sel
    mean_sd = network.rho * network.var_sd
    mean_sr = network.rho * network.var_sr
    mean_rd = network.rho * network.var_rd

    direct = rng.standard_exponential((trials, n)) * mean_sd
    to_relay = rng.standard_exponential((trials, n, m)) * mean_sr
    from_relay = rng.standard_exponential((trials, m)) * mean_rd

    selected = np.argsort(-direct, axis=1, kind="stable")[:, :k]
    useful_sources = np.sum(np.take_along_axis(direct, selected, axis=1) > gth, axis=1)

    if m and network.l_sel:
        bottleneck = np.take_along_axis(to_relay, selected[:, :, None], axis=1).min(axis=1)
        useful_relays = np.sum(np.minimum(bottleneck, from_relay) > gth, axis=1)
        relays = np.minimum(useful_relays, network.l_sel)
    else:
        relays = np.zeros(trials, dtype=np.int64)

    return int(np.sum(useful_sources + relays < k))


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk,)))


def monte_carlo_outage(
    network: RelayNetwork,
    trials: int,
    seed: int,
    workers: int = 1,
    chunk_size: int = CHUNK_SIZE,
) -> MonteCarloEstimate:
    """
    Estima la probabilidad de outage simulando el protocolo completo.

    Los ensayos se dividen en bloques de tamaño fijo con semilla propia
    derivada de (seed, índice de bloque), así que el resultado no
    depende del número de workers.

    Args:
        network: Red de relés
        trials: Número de ensayos (≥ 1)
        seed: Semilla maestra
        workers: Hilos para repartir bloques

    Returns:
        Estimación con error estándar binomial
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")

    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")

    n_chunks = math.ceil(trials / chunk_size)
    sizes = [min(chunk_size, trials - c * chunk_size) for c in range(n_chunks)]

    def run(chunk: int) -> int:
        return _count_outages(network, sizes[chunk], _chunk_rng(seed, chunk))

    if workers > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outages = sum(pool.map(run, range(n_chunks)))
    else:
        outages = sum(run(c) for c in range(n_chunks))

    estimate = outages / trials
    stderr = math.sqrt(estimate * (1.0 - estimate) / trials)
    logger.debug("Monte-Carlo: %d/%d outages (seed=%d)", outages, trials, seed)
    return MonteCarloEstimate(estimate=estimate, stderr=stderr, trials=trials, outages=outages)
