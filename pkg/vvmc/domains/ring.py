"""
The ring domain: people sit in a ring alternating male and female, and each passes a bit to the next.
"""
import logging

import numpy as np

from vvmc.shared import ConfigError, MODE_CLAUSAL
from vvmc.model  import Feature, GraphicalModel

logger = logging.getLogger( __name__ )

class RingSpec:
    """
    RingSpec( nPeople, wMale, wFemale, renameProb=0.0, seed=0, weights=None )

    nPeople must be even and at least 4.
    Clause i (1-based) weighs wMale if i is odd and wFemale if it's even, unless weights gives one weight per clause.
    Each variable is renamed (its two values swapped in every literal) independently with probability renameProb.
    Raises ConfigError if a setting is invalid.
    """
    __slots__ = ( "nPeople", "wMale", "wFemale", "renameProb", "seed", "weights" )

    def __init__( self, nPeople, wMale, wFemale, renameProb=0.0, seed=0, weights=None ):
        if nPeople < 4 or nPeople % 2:
            raise ConfigError( "A ring needs an even number of people, at least 4; not {!r}.".format( nPeople ) )
        if not 0.0 <= renameProb <= 1.0:
            raise ConfigError( "Rename probability {!r} is not in [0, 1].".format( renameProb ) )
        if weights is not None and len( weights ) != nPeople:
            raise ConfigError( "Expected {:d} clause weights, but received {:d}.".format( nPeople, len( weights ) ) )
        self.nPeople    = nPeople
        self.wMale      = wMale
        self.wFemale    = wFemale
        self.renameProb = renameProb
        self.seed       = seed
        self.weights    = None if weights is None else tuple( float( w ) for w in weights )

    def clauseWeight( self, i ):
        """Return the weight of clause i (1-based)."""
        if self.weights is not None:
            return self.weights[i - 1]
        return self.wMale if i % 2 else self.wFemale

def genRing( spec ):
    """
    Builds the ring model X1..XN with the clauses ¬X_i ∨ X_{i+1} (indices mod N), then renames variables at random.
    Deterministic given spec.seed.
    """
    N = spec.nPeople
    rng = np.random.default_rng( spec.seed )
    renamed = rng.random( N ) < spec.renameProb
    def literal( i, positive ):
        return ( i, 0 if renamed[i] else 1, positive )
    features = [
        Feature( [ literal( i, False ), literal( ( i + 1 ) % N, True ) ], spec.clauseWeight( i + 1 ) )
        for i in range( N )
    ]
    logger.debug( "Ring of %d people, %d renamed", N, int( renamed.sum() ) )
    return GraphicalModel( [ ( "X{:d}".format( i + 1 ), 2 ) for i in range( N ) ], features, MODE_CLAUSAL )
