"""Exact multiparameter persistence modules with noise systems.

Grid modules over F_p with rational scale, noise-system membership and
size, feature counting functions, denoising, and point-cloud ingestion.
All arithmetic is exact (finite fields and Fraction).
"""

from .barcode import bar_lengths, decompose, reconstruct
from .bifiltration import build_h0
from .denoise import (Denoising, denoising_betti_sequence, quotient_denoise,
                      subfunctor_denoise)
from .fcf import (FeatureCountingFunction, bar_r1, bar_search,
                  bar_zero_check, closeness_upper_bound, constant_fcf,
                  equivalence_budget, fcf_from_csv,
                  fcf_interleaving_distance, fcf_to_csv, is_interleaved,
                  make_fcf, minimal_rank_submodule, natural_map_space)
from .grid import (Bar, GridModule, direct_sum, evaluate_map,
                   evaluate_rational, make_bar, make_free, make_module,
                   modules_equal, modules_iso_rankwise, rescale, translate,
                   validate, zero_module)
from .modfile import (barcode_from_csv, barcode_to_csv, parse_module,
                      write_module)
from .noise import (INFINITE, ConeNoise, DimensionNoise, DomainNoise,
                    Intersection, VNormNoise, closed_under_sums, contains,
                    feasible_offsets, max_noise_below, max_noise_submodule,
                    noise_candidates, noise_size, offset_cost,
                    parse_noise_spec)
from .structure import (NatMap, Submodule, betti0, cokernel, image, kernel,
                        minimal_cover, minimal_generators, quotient_by_submodule,
                        radical, rank, span_submodule, submodule_to_module,
                        support)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
