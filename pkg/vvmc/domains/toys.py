"""
Small hand-built models with known symmetry structure.
"""
import math

from vvmc.shared import MODE_CLAUSAL, MODE_CONJUNCTIVE
from vvmc.model  import Feature, GraphicalModel

def toyG1( w1=math.log( 2 ), w2=math.log( 3 ) ):
    """
    Two Boolean variables a, b with the clauses a ∨ ¬b (weight w1) and ¬a ∨ b (weight w2).
    Its only variable symmetry is the identity, but swapping (a,0)↔(b,1) and (a,1)↔(b,0) is a VV symmetry.
    """
    return GraphicalModel(
        [ ( "a", 2 ), ( "b", 2 ) ],
        [
            Feature( [ ( 0, 1, True  ), ( 1, 1, False ) ], w1 ),
            Feature( [ ( 0, 1, False ), ( 1, 1, True  ) ], w2 )
        ],
        MODE_CLAUSAL
    )

def toyG2( ws=1.0, wd=1.0 ):
    """Two Boolean variables X1, X2 with one conjunctive feature per joint assignment: f_00 and f_11 weigh ws, f_01 and f_10 weigh wd."""
    features = []
    for x1 in range( 2 ):
        for x2 in range( 2 ):
            features.append( Feature( [ ( 0, x1, True ), ( 1, x2, True ) ], ws if x1 == x2 else wd, MODE_CONJUNCTIVE ) )
    return GraphicalModel( [ ( "X1", 2 ), ( "X2", 2 ) ], features, MODE_CONJUNCTIVE )

def toyG3Nec( w=math.log( 2 ) ):
    """a with two values and b with three; the clauses [a=1] and [b=1 ∨ b=2] both weigh w."""
    return GraphicalModel(
        [ ( "a", 2 ), ( "b", 3 ) ],
        [
            Feature( [ ( 0, 1, True ) ], w ),
            Feature( [ ( 1, 1, True ), ( 1, 2, True ) ], w )
        ],
        MODE_CLAUSAL
    )

def toyXor( w=1.0 ):
    """Two Boolean variables with the conjunctive features a=1 ∧ b=0 and a=0 ∧ b=1, both weighing w."""
    return GraphicalModel(
        [ ( "a", 2 ), ( "b", 2 ) ],
        [
            Feature( [ ( 0, 1, True ), ( 1, 0, True ) ], w, MODE_CONJUNCTIVE ),
            Feature( [ ( 0, 0, True ), ( 1, 1, True ) ], w, MODE_CONJUNCTIVE )
        ],
        MODE_CONJUNCTIVE
    )
