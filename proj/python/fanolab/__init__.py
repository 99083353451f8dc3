"""Divergences, Fano-type lower bounds and their verification suite."""

from ._fanolab import (
    FanolabError,
    binary_entropy,
    birge_c,
    birge_d,
    birge_table,
    bretagnolle_huber_q_lower,
    chi2_bernoulli,
    chi2_solved,
    cramer_rate,
    divergence,
    fano_bounds,
    haroutunian_q_lower,
    hellinger2_bernoulli,
    kl_bernoulli,
    kl_inverse,
    lb_affine,
    lb_classic,
    lb_pinsker_fano,
    lb_refined,
    lecam_hellinger,
    massart_constant,
    pinsker_factor,
    posterior_constant,
    posterior_dd_bound,
    reduce,
    sparse_env_kl,
    sparse_regret_bound,
    verify,
    verify_json_lines,
)

__all__ = [name for name in dir() if not name.startswith("_")]
