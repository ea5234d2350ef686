"""
Rewrites a multi-valued model into an all-Boolean one, so that Boolean-only symmetry detection applies to it.
"""
import numpy as np

from vvmc.shared import ConfigError, MODE_CLAUSAL, HARD
from vvmc.model  import Feature, GraphicalModel

class Binarization:
    """
    A binarized model and the maps between its states and the original's.
    slots[i] lists the Boolean variable ids standing for the original variable i:
    one per value for a multi-valued variable, or just the variable itself for a Boolean one.
    """
    __slots__ = ( "original", "model", "slots" )

    def __init__( self, original, model, slots ):
        self.original = original
        self.model    = model
        self.slots    = slots

    def toBinary( self, s ):
        """Return the one-hot image of the original state s."""
        out = [ 0 ] * self.model.n
        for i, x in enumerate( s ):
            ids = self.slots[i]
            if len( ids ) == 1:
                out[ids[0]] = x
            else:
                out[ids[x]] = 1
        return tuple( out )

    def toOriginal( self, b ):
        """Return the original state of a binarized state; a multi-valued variable takes its first value that is set (0 if none is)."""
        out = []
        for ids in self.slots:
            if len( ids ) == 1:
                out.append( b[ids[0]] )
            else:
                on = [ x for x, v in enumerate( ids ) if b[v] ]
                out.append( on[0] if on else 0 )
        return tuple( out )

    def projectMarginals( self, marginals ):
        """Turn marginals of the binarized model into marginals of the original variables (normalized per variable)."""
        out = []
        for ids in self.slots:
            if len( ids ) == 1:
                out.append( np.asarray( marginals[ids[0]], dtype=float ) )
                continue
            m = np.array( [ marginals[v][1] for v in ids ], dtype=float )
            total = m.sum()
            out.append( m / total if total > 0 else np.full( len( ids ), 1.0 / len( ids ) ) )
        return out

def binarize( G ):
    """
    Binarizes the clausal model G.
    Every multi-valued variable X becomes Booleans X_0 .. X_{|D|-1} with a HARD at-least-one clause and HARD pairwise at-most-one clauses;
    literals X=v become X_v=1 and X!=v become X_v!=1. Variables with at most two values are kept.
    Raises ConfigError if G is not clausal.
    """
    if G.kind != MODE_CLAUSAL:
        raise ConfigError( "Only clausal models can be binarized." )
    variables = []
    slots = []
    features = []
    for v in G.variables:
        if v.cardinality <= 2:
            slots.append( ( len( variables ), ) )
            variables.append( ( v.name, v.cardinality ) )
            continue
        ids = tuple( range( len( variables ), len( variables ) + v.cardinality ) )
        slots.append( ids )
        variables.extend( ( "{}_{:d}".format( v.name, x ), 2 ) for x in range( v.cardinality ) )
        features.append( Feature( [ ( b, 1, True ) for b in ids ], HARD ) )
        for k, a in enumerate( ids ):
            for b in ids[k + 1:]:
                features.append( Feature( [ ( a, 1, False ), ( b, 1, False ) ], HARD ) )
    for f in G.features:
        lits = []
        for var, x, p in f.literals:
            ids = slots[var]
            lits.append( ( ids[0], x, p ) if len( ids ) == 1 else ( ids[x], 1, p ) )
        features.append( Feature( lits, f.weight ) )
    return Binarization( G, GraphicalModel( variables, features, MODE_CLAUSAL ), tuple( slots ) )
