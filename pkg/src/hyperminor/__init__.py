"""Minor-universality of product graphs and hypercubes, at desk scale."""
from .errors import (CapacityError, HyperminorError, InvalidInputError, ResourceError,
                     UsageError)
from .graph import (BaseGraph, Graph, Hypercube, ProductGraph, Walk, bfs_path, cartesian_product,
                    complete, cycle, degree_reduce, hypercube, make_family, path,
                    simple_subdivision, star)
from .permdec import (BoxPermutation, BoxShape, OneDimFactor, compose, decompose,
                      min_factors_exhaustive, well_disperse)
from .coloring import vizing_edge_color
from .embedding import (CombinatorialEmbedding, MinorModel, PiecewiseEmbedding, TrioSchedule,
                        compose_models, cycle_minor_in_hypercube, embed_max_degree_3,
                        hypercube_embed, lift_with_cycle, minor_universal_embed,
                        model_to_embedding, piecewise_matching_embed, product_model,
                        subdivision_embedding_to_model, verify_embedding, verify_model,
                        verify_piecewise)
from .oracle import enumerate_guests, is_minor_bruteforce, universality_number
from .bounds import (cheeger_exact, entropy_bound, nonuniversality_constants, separation_audit,
                     sphere_sizes, stirling_binomial_bound)

__version__ = "0.1.0"
