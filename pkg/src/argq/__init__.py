"""Semi-instantiated argumentation networks.

Submodules:

``frames``    plain frames, labellings, complete extensions
``kleene``    three-valued propositional formulas and equations
``monadic``   monadic predicate and S5 normal forms
``topnet``    networks with a truth node
``cdnet``     conjunctive and disjunctive set attacks
``baf``       Boolean attack formations
``pipeline``  instantiated frames and the formation pipeline
``bipolar``   strict/defeasible networks from defeasible theories
``dot``       Graphviz export
``cli``       command line
"""

from .errors import ArgqError, ContractError, InputError, ParseError, ResourceLimitError
from .frames import ArgFrame, Labelling, complete_labellings, grounded_labelling
from .values import HALF

__all__ = [
    "ArgFrame", "Labelling", "complete_labellings", "grounded_labelling", "HALF",
    "ArgqError", "ContractError", "InputError", "ParseError", "ResourceLimitError",
]
