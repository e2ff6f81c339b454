"""Log Calabi-Yau surfaces from toric models, and their mirror Lefschetz fibrations
at the level of K-theory and homology classes."""
from .errors import LcyError
from .fan import Fan, validate_fan, self_intersections, mmp_reduce
from .model import ToricModel, make_model, elementary_transformation, boundary_profile
from .fibration import CurveClass, Fibration, hurwitz_move, total_monodromy, standard_fibration
from .bridge import build_standard, restrict_class
from .classify import classify_nontoric_blowdown

__version__ = "0.1.0"
