"""
Value swap symmetries, reduced models and non-equicardinal (NEC) symmetries.

Two values v, v' of a variable are equivalent if swapping them (and fixing every other pair) is a symmetry of the model.
The reduced model keeps one representative value per class (the smallest); its VV symmetries, composed with value swaps,
relate states across variables of different cardinalities.
"""
import json
import itertools
import logging

import numpy as np

from vvmc.shared    import VVMCError, RatioNotConstant, InvalidPermutation, MODE_CLAUSAL, HARD
from vvmc.model     import Feature, GraphicalModel, exactDistribution
from vvmc.autograph import buildVvGraph, automorphismGenerators, vvSymmetries
from vvmc.symmetry  import VVPermutation, isVvSymmetry, stateOrbits

logger = logging.getLogger( __name__ )

#Relative tolerance for the reduced/original probability ratio
RATIO_TOLERANCE = 1e-9

class ValueClasses:
    """
    A partition of each variable's values into equivalence classes.
    classes[i] is a tuple of sorted tuples ordered by their smallest value; rep( i, v ) is the smallest value of v's class.
    """
    __slots__ = ( "classes", "_index" )

    def __init__( self, classes ):
        cs = []
        index = []
        for i, parts in enumerate( classes ):
            parts = sorted( tuple( sorted( p ) ) for p in parts )
            values = sorted( x for p in parts for x in p )
            if values != list( range( len( values ) ) ) or any( not p for p in parts ):
                raise InvalidPermutation( "Value classes of variable {:d} do not partition its values.".format( i ) )
            lookup = [ 0 ] * len( values )
            for k, p in enumerate( parts ):
                for x in p:
                    lookup[x] = k
            cs.append( tuple( parts ) )
            index.append( tuple( lookup ) )
        self.classes = tuple( cs )
        self._index  = tuple( index )

    @classmethod
    def singletons( cls, G ):
        return cls( [ [ ( x, ) for x in range( v.cardinality ) ] for v in G.variables ] )

    def classIndex( self, var, value ):
        """Return the index of value's class, which is also its value in the reduced model."""
        return self._index[var][value]

    def classOf( self, var, value ):
        return self.classes[var][self._index[var][value]]

    def rep( self, var, value ):
        return self.classes[var][self._index[var][value]][0]

    def reducedCardinality( self, var ):
        return len( self.classes[var] )

    def isTrivial( self ):
        """Return True if every class is a singleton."""
        return all( len( p ) == 1 for parts in self.classes for p in parts )

    def format( self, names ):
        """Return one line per variable, e.g. "var b classes [[0],[1,2]]"."""
        return "\n".join(
            "var {} classes {}".format( names[i], json.dumps( [ list( p ) for p in parts ], separators=( ",", ":" ) ) )
            for i, parts in enumerate( self.classes )
        )

    def __eq__( self, other ):
        return isinstance( other, ValueClasses ) and self.classes == other.classes

    def __hash__( self ):
        return hash( self.classes )

    def __repr__( self ):
        return "ValueClasses( {!r} )".format( [ [ list( p ) for p in parts ] for parts in self.classes ] )

def valueSwap( G, var, v, w ):
    """Return the VV permutation φ^var_{v↔w} of G, which swaps ( var, v ) and ( var, w ) and fixes every other pair."""
    mapping = list( range( G.vvCount() ) )
    a, b = G.vvIndex( var, v ), G.vvIndex( var, w )
    mapping[a], mapping[b] = b, a
    return VVPermutation( G.cardinalities, mapping )

def valueSwapClasses( G, budget=None ):
    """
    Computes the value swap classes of G.

    The automorphisms of G_VV with every feature in its own color give a first partition: with features pinned,
    an automorphism can only move a variable-value node onto a node with exactly the same features.
    That misses swaps that exchange two features of equal weight, so classes of the same variable are then merged
    whenever swapping their representatives is a symmetry. Swaps that are symmetries are closed under conjugation,
    so testing representatives is enough and the result is still a partition.
    Raises SearchBudgetExceeded if the automorphism search exceeds budget.
    """
    g = buildVvGraph( G, distinctFeatureColors=True )
    V = G.vvCount()
    parent = list( range( V ) )
    def find( x ):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    def union( a, b ):
        a, b = find( a ), find( b )
        if a != b:
            parent[max( a, b )] = min( a, b )
    for p in automorphismGenerators( g, budget ):
        for u in range( V ):
            union( u, p[u] )

    for i, v in enumerate( G.variables ):
        #Smallest value of each class found so far
        reps = {}
        for x in range( v.cardinality ):
            reps.setdefault( find( G.vvIndex( i, x ) ), x )
        reps = sorted( reps.values() )
        for j, x in enumerate( reps ):
            for y in reps[j + 1:]:
                if find( G.vvIndex( i, x ) ) == find( G.vvIndex( i, y ) ):
                    continue
                if isVvSymmetry( valueSwap( G, i, x, y ), G ):
                    logger.debug( "Merging the classes of values %d and %d of %s", x, y, v.name )
                    union( G.vvIndex( i, x ), G.vvIndex( i, y ) )

    classes = []
    for i, v in enumerate( G.variables ):
        groups = {}
        for x in range( v.cardinality ):
            groups.setdefault( find( G.vvIndex( i, x ) ), [] ).append( x )
        classes.append( list( groups.values() ) )
    result = ValueClasses( classes )

    for i, parts in enumerate( result.classes ):
        for p in parts:
            for x in p[1:]:
                if not isVvSymmetry( valueSwap( G, i, p[0], x ), G ):
                    raise VVMCError( "Values {:d} and {:d} of \"{}\" were merged, but swapping them is not a symmetry.".format( p[0], x, G.variables[i].name ) )
    logger.debug( "Value classes: %r", result )
    return result

class ReducedModel:
    """
    A model over representative values.
    model is G^R, whose variable i has one value per class of classes; reduced value k stands for the original value valueMaps[i][k].
    constant is the total weight of the soft features that became constant-true on representative states (it only affects Z).
    """
    __slots__ = ( "original", "model", "classes", "valueMaps", "constant" )

    def __init__( self, original, model, classes, constant=0.0 ):
        self.original  = original
        self.model     = model
        self.classes   = classes
        self.valueMaps = tuple( tuple( p[0] for p in parts ) for parts in classes.classes )
        self.constant  = constant

    def toReduced( self, s ):
        """Return the reduced state of rep( s )."""
        return tuple( self.classes.classIndex( i, x ) for i, x in enumerate( s ) )

    def toOriginal( self, u ):
        """Return the original representative state that the reduced state u stands for."""
        return tuple( self.valueMaps[i][k] for i, k in enumerate( u ) )

    def suborbitSize( self, u ):
        """Return c( u ) for the reduced state u."""
        size = 1
        for i, k in enumerate( u ):
            size *= len( self.classes.classes[i][k] )
        return size

def reduceModel( G, classes ):
    """
    Builds the reduced model of G for the given ValueClasses.

    Every literal on a non-representative value is simplified away, which is exact on representative states:
    in a clause, X=v is false (the literal is dropped; a clause left empty is dropped) and X!=v is true (the clause is dropped
    and its weight folded into the constant); in a conjunction, X=v is false (the feature is dropped) and X!=v is true
    (the literal is dropped; a conjunction left empty is folded into the constant).
    Representative values are renumbered densely.
    """
    clausal = G.kind == MODE_CLAUSAL
    features = []
    constant = 0.0
    for f in G.features:
        lits = []
        outcome = None
        for v, x, p in f.literals:
            if classes.rep( v, x ) == x:
                lits.append( ( v, classes.classIndex( v, x ), p ) )
            elif clausal and not p:
                outcome = True
                break
            elif not clausal and p:
                outcome = False
                break
        if outcome is None and not lits:
            outcome = not clausal
        if outcome is None:
            features.append( Feature( lits, f.weight, f.kind ) )
        elif outcome and f.weight != HARD:
            constant += f.weight
    variables = [ ( v.name, classes.reducedCardinality( v.id ) ) for v in G.variables ]
    return ReducedModel( G, GraphicalModel( variables, features, G.kind ), classes, constant )

def kRatio( G, R, cap=None ):
    """
    Returns k = P_R( u ) / P_G( rep state of u ), after checking it's the same for every representative state (within 1e-9 relative).
    Raises RatioNotConstant otherwise, and StateSpaceTooLarge if either model has more than cap states.
    """
    pr = exactDistribution( R.model, cap )
    pg = exactDistribution( G, cap )
    originals = np.column_stack( [ np.asarray( R.valueMaps[i] )[pr.states[:, i]] for i in range( G.n ) ] ) if G.n else pr.states
    idx = np.ravel_multi_index( originals.T, G.cardinalities ) if G.n else np.zeros( 1, dtype=np.int64 )
    first = None
    for a, b in zip( pr.probabilities, pg.probabilities[idx] ):
        if a == 0.0 and b == 0.0:
            continue
        if b == 0.0 or a == 0.0:
            raise RatioNotConstant( first, a / b if b else float( "inf" ) )
        r = a / b
        if first is None:
            first = r
        elif abs( r - first ) > RATIO_TOLERANCE * first:
            raise RatioNotConstant( first, r )
    return first

def repState( s, classes ):
    """Return s with every value replaced by its class representative."""
    return tuple( classes.rep( i, x ) for i, x in enumerate( s ) )

def suborbitSize( s, classes ):
    """Return c( s ), the number of states sharing rep( s ): the product of the sizes of s's value classes."""
    size = 1
    for i, x in enumerate( s ):
        size *= len( classes.classOf( i, x ) )
    return size

def perVariableSuborbit( s, i, classes ):
    """Return c^i( s ), the number of states that share rep( s ) and differ from s at most at variable i."""
    return len( classes.classOf( i, s[i] ) )

class NECSymmetry:
    """A non-equicardinal symmetry: a VV symmetry of the reduced model, composed with value swaps on the way back."""
    __slots__ = ( "reducedVv", "reduced" )

    def __init__( self, reducedVv, reduced ):
        self.reducedVv = reducedVv
        self.reduced   = reduced

    @property
    def classes( self ):
        return self.reduced.classes

    def format( self ):
        return self.reducedVv.format( self.reduced.model.names )

def applyNec( tau, s, choice=None ):
    """
    Applies the NEC symmetry tau to state s.

    u = rep( s ) is mapped through tau's reduced VV symmetry and back to original representatives;
    then each variable's value is replaced by a member of its class, chosen by choice:
        None                  keep the representative;
        a dict var -> value   use the given value (which must be in the class); other variables keep the representative;
        a numpy Generator     draw uniformly from the class.
    Raises InvalidPermutation if a chosen value is not in its class.
    """
    R = tau.reduced
    out = list( R.toOriginal( tau.reducedVv.apply( R.toReduced( s ) ) ) )
    if choice is None:
        return tuple( out )
    for i, x in enumerate( out ):
        cls = R.classes.classOf( i, x )
        if hasattr( choice, "integers" ):
            if len( cls ) > 1:
                out[i] = cls[int( choice.integers( len( cls ) ) )]
        elif i in choice:
            if choice[i] not in cls:
                raise InvalidPermutation( "Value {:d} is not in the class {!r} of variable {:d}.".format( choice[i], cls, i ) )
            out[i] = choice[i]
    return tuple( out )

def necSymmetries( G, budget=None ):
    """
    Runs both passes: value swap classes of G, then the VV symmetries of the reduced model.
    Returns the ReducedModel and a list of NECSymmetry objects (one per generator).
    """
    classes = valueSwapClasses( G, budget )
    R = reduceModel( G, classes )
    gens = vvSymmetries( R.model, budget )
    logger.debug( "Reduced model has %d VV generators", len( gens ) )
    return R, [ NECSymmetry( g, R ) for g in gens ]

def necOrbitPartition( R, symmetries, cap=None ):
    """
    Returns the orbits of the NEC symmetries on the states of the original model:
    the orbit of s holds every state whose reduced state is in the orbit of s's reduced state.
    Returns a list of sorted tuples of states ordered by their first state.
    """
    classes = R.classes.classes
    out = []
    for o in stateOrbits( R.model, [ t.reducedVv for t in symmetries ], cap ):
        states = []
        for u in o:
            choices = [ classes[i][k] for i, k in enumerate( u ) ]
            states.extend( itertools.product( *choices ) )
        out.append( tuple( sorted( states ) ) )
    return sorted( out )
