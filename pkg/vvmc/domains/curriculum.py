"""
The student curriculum domain.

Student s takes one course in each area a; P_s_a is 0 if s failed and otherwise the number (1..N(a)) of the course passed.
C_s_a_b holds exactly when s passed a course in both areas a and b, which is what the breadth requirement asks for.
"""
import logging

import numpy as np

from vvmc.shared import ConfigError, MODE_CLAUSAL, HARD
from vvmc.model  import Feature, GraphicalModel

logger = logging.getLogger( __name__ )

#Fail weights are drawn from these when not given, so that students with equal seriousness stay symmetric
DEFAULT_FAIL_WEIGHTS = ( 0.5, 1.0 )

class CurriculumSpec:
    """
    CurriculumSpec( nStudents, areas, failWeights=None, completionWeight=1.0, seed=0 )

    areas lists the number of courses N(a) of every area.
    failWeights has one weight per student; when omitted each is drawn from DEFAULT_FAIL_WEIGHTS with the given seed.
    Raises ConfigError if a setting is invalid.
    """
    __slots__ = ( "nStudents", "areas", "failWeights", "completionWeight", "seed" )

    def __init__( self, nStudents, areas, failWeights=None, completionWeight=1.0, seed=0 ):
        if nStudents < 1:
            raise ConfigError( "A curriculum needs at least one student." )
        if len( areas ) < 2:
            raise ConfigError( "A curriculum needs at least two areas." )
        if any( n < 1 for n in areas ):
            raise ConfigError( "Every area needs at least one course: {!r}.".format( list( areas ) ) )
        if failWeights is None:
            rng = np.random.default_rng( seed )
            failWeights = [ DEFAULT_FAIL_WEIGHTS[int( k )] for k in rng.integers( len( DEFAULT_FAIL_WEIGHTS ), size=nStudents ) ]
        elif len( failWeights ) != nStudents:
            raise ConfigError( "Expected {:d} fail weights, but received {:d}.".format( nStudents, len( failWeights ) ) )
        self.nStudents        = nStudents
        self.areas            = tuple( int( n ) for n in areas )
        self.failWeights      = tuple( float( w ) for w in failWeights )
        self.completionWeight = float( completionWeight )
        self.seed             = seed

def genCurriculum( spec ):
    """
    Builds the curriculum model. For every student s, area a and pair of areas a < b:
        fail weight of s   [P_s_a=0]
        HARD               [!C_s_a_b=1 ∨ !P_s_a=0]
        HARD               [!C_s_a_b=1 ∨ !P_s_b=0]
        HARD               [C_s_a_b=1 ∨ P_s_a=0 ∨ P_s_b=0]
        completion weight  [C_s_a_b=1]
    Areas and students are numbered from 1 in variable names.
    """
    variables = []
    features = []
    A = len( spec.areas )
    for s in range( spec.nStudents ):
        P = []
        for a, n in enumerate( spec.areas ):
            P.append( len( variables ) )
            variables.append( ( "P_{:d}_{:d}".format( s + 1, a + 1 ), n + 1 ) )
            features.append( Feature( [ ( P[-1], 0, True ) ], spec.failWeights[s] ) )
        for a in range( A ):
            for b in range( a + 1, A ):
                C = len( variables )
                variables.append( ( "C_{:d}_{:d}_{:d}".format( s + 1, a + 1, b + 1 ), 2 ) )
                features.append( Feature( [ ( C, 1, False ), ( P[a], 0, False ) ], HARD ) )
                features.append( Feature( [ ( C, 1, False ), ( P[b], 0, False ) ], HARD ) )
                features.append( Feature( [ ( C, 1, True ), ( P[a], 0, True ), ( P[b], 0, True ) ], HARD ) )
                features.append( Feature( [ ( C, 1, True ) ], spec.completionWeight ) )
    logger.debug( "Curriculum with %d variables and %d features", len( variables ), len( features ) )
    return GraphicalModel( variables, features, MODE_CLAUSAL )
