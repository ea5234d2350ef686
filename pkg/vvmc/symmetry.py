import itertools
import logging
import math

import numpy as np

from vvmc           import config
from vvmc.shared    import InvalidPermutation, DomainMismatch, SizeMismatch, RenamingSpaceTooLarge
from vvmc.model     import Feature, exactDistribution
from vvmc.permgroup import Permutation, GeneratorSet, compose, invert, orbit, groupClosure

logger = logging.getLogger( __name__ )

#Taxonomy labels, from coarsest to finest
LABEL_COUNT            = "count"
LABEL_SRV_COUNT        = "srv_count"
LABEL_URV_COUNT        = "urv_count"
LABEL_EQUICARDINAL     = "equicardinal_noncount"
LABEL_NON_EQUICARDINAL = "non_equicardinal"

#States whose probabilities differ by less than this are put in the same class by equalProbabilityPartition()
PROBABILITY_TOLERANCE = 1e-12

class VVPermutation:
    """
    A permutation of the variable-value (VV) pairs of a model.

    The pair (X_i, v) is encoded as offset_i + v, where offset_i is the number of values of the variables before X_i
    (see GraphicalModel.vvIndex), so the underlying Permutation acts on 0..sum |D_i| - 1.

    A VV permutation is valid if all values of each variable land on a single variable and the induced variable map is a bijection;
    only valid permutations act on states.
    """
    __slots__ = ( "cardinalities", "offsets", "perm", "_vars", "_table" )

    def __init__( self, cardinalities, mapping ):
        self.cardinalities = tuple( cardinalities )
        offsets = [ 0 ]
        for c in self.cardinalities:
            offsets.append( offsets[-1] + c )
        self.offsets = tuple( offsets )
        perm = mapping if isinstance( mapping, Permutation ) else Permutation( mapping )
        if len( perm ) != offsets[-1]:
            raise SizeMismatch( offsets[-1], len( perm ) )
        self.perm = perm
        self._vars = [ v for v, c in enumerate( self.cardinalities ) for _ in range( c ) ]
        self._table = None

    @classmethod
    def fromPairs( cls, G, pairs ):
        """
        Build a VV permutation of G from a dict mapping ( var, value ) pairs (by id or name) to ( var, value ) pairs.
        Pairs that aren't mentioned are fixed.
        """
        def index( p ):
            var, value = p
            if isinstance( var, str ):
                var = G.index( var )
            return G.vvIndex( var, value )
        mapping = list( range( G.vvCount() ) )
        for a, b in pairs.items():
            mapping[index( a )] = index( b )
        return cls( G.cardinalities, mapping )

    @classmethod
    def identity( cls, G ):
        return cls( G.cardinalities, range( G.vvCount() ) )

    def pair( self, index ):
        var = self._vars[index]
        return ( var, index - self.offsets[var] )

    def image( self, var, value ):
        """Return the ( var, value ) pair that ( var, value ) maps to."""
        return self.pair( self.perm[self.offsets[var] + value] )

    def varImage( self ):
        """Return the induced variable map as a tuple, or None if this permutation is not valid."""
        out = []
        for i, c in enumerate( self.cardinalities ):
            targets = { self._vars[self.perm[self.offsets[i] + x]] for x in range( c ) }
            if len( targets ) != 1:
                return None
            out.append( targets.pop() )
        if len( set( out ) ) != len( out ):
            return None
        return tuple( out )

    def isValid( self ):
        return self.varImage() is not None

    def table( self ):
        """
        Returns ( theta, sigma ): the variable map and, for each variable, the tuple mapping its values to the values of its image.
        Raises InvalidPermutation if this permutation is not valid.
        """
        if self._table is None:
            theta = self.varImage()
            if theta is None:
                raise InvalidPermutation( "{} does not map each variable onto a single variable.".format( self.format() ) )
            sigma = tuple(
                tuple( self.perm[self.offsets[i] + x] - self.offsets[theta[i]] for x in range( c ) )
                for i, c in enumerate( self.cardinalities )
            )
            self._table = ( theta, sigma )
        return self._table

    def valueMap( self, var ):
        return self.table()[1][var]

    def apply( self, s ):
        """Return the image of state s (a sequence of values indexed by variable id) as a tuple."""
        theta, sigma = self.table()
        out = [ 0 ] * len( theta )
        for i, x in enumerate( s ):
            out[theta[i]] = sigma[i][x]
        return tuple( out )

    def applyArray( self, states ):
        """Vectorized apply() over the rows of an integer array."""
        theta, sigma = self.table()
        out = np.empty_like( states )
        for i in range( len( theta ) ):
            out[:, theta[i]] = np.asarray( sigma[i], dtype=states.dtype )[states[:, i]]
        return out

    def isIdentity( self ):
        return self.perm.isIdentity()

    def hasIdentityValueMaps( self ):
        """Return True if every value is mapped to the same value of the image variable (i.e. this is a variable permutation)."""
        return all( all( y == x for x, y in enumerate( s ) ) for s in self.table()[1] )

    def compose( self, other ):
        """Return self∘other."""
        if self.cardinalities != other.cardinalities:
            raise SizeMismatch( len( self.perm ), len( other.perm ) )
        return VVPermutation( self.cardinalities, compose( self.perm, other.perm ) )

    __mul__ = compose

    def inverse( self ):
        return VVPermutation( self.cardinalities, invert( self.perm ) )

    def format( self, names=None ):
        """Return this permutation in cycle notation over pairs, e.g. "(a.0 b.1)(a.1 b.0)"."""
        def label( index ):
            var, value = self.pair( index )
            return "{}.{:d}".format( names[var] if names is not None else var, value )
        return self.perm.format( label )

    def __eq__( self, other ):
        return isinstance( other, VVPermutation ) and self.cardinalities == other.cardinalities and self.perm == other.perm

    def __hash__( self ):
        return hash( ( self.cardinalities, self.perm ) )

    def __repr__( self ):
        return "VVPermutation( {} )".format( self.format() )

def isValidVv( phi ):
    """Return True if every variable is mapped onto a single variable and the induced variable map is a bijection."""
    return phi.isValid()

def applyVvToState( phi, s ):
    """
    Return the state φ(s): for each i with φ( i, s[i] ) = ( j, v' ), the result has value v' at j.
    Raises InvalidPermutation if φ isn't valid.
    """
    return phi.apply( s )

def applyVvToModel( phi, G ):
    """
    Return the model obtained by rewriting every literal of G through φ (X!=v becomes X'!=v' where φ(X,v) = (X',v')).
    Weights are kept. Raises InvalidPermutation if φ isn't valid.
    """
    theta, sigma = phi.table()
    features = [
        Feature( [ ( theta[v], sigma[v][x], p ) for v, x, p in f.literals ], f.weight, f.kind )
        for f in G.features
    ]
    return G.withFeatures( features )

def isVvSymmetry( phi, G ):
    """Return True if φ maps G onto itself (compared by canonical form)."""
    if not phi.isValid():
        return False
    return applyVvToModel( phi, G ) == G

def embedVariableSymmetry( theta, G ):
    """
    Return the VV permutation φ( X_i, v ) = ( θ( X_i ), v ) of a variable permutation θ of G.
    Raises DomainMismatch if θ maps a variable onto one with a different number of values.
    """
    cards = G.cardinalities
    mapping = [ 0 ] * G.vvCount()
    for i, j in enumerate( theta ):
        if cards[i] != cards[j]:
            raise DomainMismatch( G.variables[i].name, cards[i], G.variables[j].name, cards[j] )
        for x in range( cards[i] ):
            mapping[G.vvIndex( i, x )] = G.vvIndex( j, x )
    return VVPermutation( cards, mapping )

def isCountSymmetry( phi, G, cap=None ):
    """
    Returns True if, for every state s and every value v, the number of variables of each cardinality class that take v is the same in s and φ(s).
    Decided by enumerating every state. Raises StateSpaceTooLarge if G has more than cap states.
    """
    states = G.statesArray( cap )
    images = phi.applyArray( states )
    cards = np.asarray( G.cardinalities )
    for c in sorted( set( G.cardinalities ) ):
        cls = np.flatnonzero( cards == c )
        for v in range( c ):
            if not np.array_equal( ( states[:, cls] == v ).sum( axis=1 ), ( images[:, cls] == v ).sum( axis=1 ) ):
                return False
    return True

def renamings( G, cap=None ):
    """
    Iterates over every per-variable value renaming of G in lexicographic order (identity first).
    A renaming is a tuple holding, for each variable, a tuple mapping each value to its new name.
    Raises RenamingSpaceTooLarge if there are more than cap renamings (default config.getRenamingCap()).
    """
    if cap is None:
        cap = config.getRenamingCap()
    total = 1
    for c in G.cardinalities:
        total *= math.factorial( c )
        if total > cap:
            raise RenamingSpaceTooLarge( total, cap )
    return itertools.product( *( itertools.permutations( range( c ) ) for c in G.cardinalities ) )

def isCountUnderRenaming( phi, rho ):
    """
    Return True if φ is a count symmetry once values are renamed by rho.
    After renaming, φ sends (i, rho_i(v)) to (θ(i), rho_θ(i)(σ_i(v))), which is a variable permutation iff rho_θ(i)∘σ_i = rho_i for every i.
    """
    theta, sigma = phi.table()
    return all( rho[theta[i]][sigma[i][x]] == rho[i][x] for i in range( len( theta ) ) for x in range( len( sigma[i] ) ) )

def isRenamableToCount( phi ):
    """
    Return True if some renaming makes φ a count symmetry,
    i.e. the composed value maps around every cycle of the variable map are identities.
    """
    theta, sigma = phi.table()
    seen = set()
    for start in range( len( theta ) ):
        if start in seen:
            continue
        acc = tuple( range( len( sigma[start] ) ) )
        i = start
        while True:
            seen.add( i )
            acc = tuple( sigma[i][x] for x in acc )
            i = theta[i]
            if i == start:
                break
        if any( x != y for x, y in enumerate( acc ) ):
            return False
    return True

def formatRenaming( G, rho ):
    """Return a renaming in a readable form, e.g. "rename b.0↔b.1"; the identity renaming is "identity"."""
    parts = []
    for i, r in enumerate( rho ):
        name = G.variables[i].name
        for cycle in Permutation( r ).cycles():
            if len( cycle ) == 2:
                parts.append( "{0}.{1:d}↔{0}.{2:d}".format( name, *cycle ) )
            else:
                parts.append( "→".join( "{}.{:d}".format( name, x ) for x in cycle + cycle[:1] ) )
    return "rename " + ", ".join( parts ) if parts else "identity"

class Taxonomy:
    """
    The result of classifyTaxonomy().
    label is the group-level label and witness the renaming (see renamings()) that makes every generator a count symmetry,
    if the label is LABEL_SRV_COUNT. perGenerator holds a ( label, witness ) pair for each generator.
    """
    __slots__ = ( "label", "witness", "perGenerator", "witnessText" )

    def __init__( self, label, witness=None, perGenerator=(), witnessText=None ):
        self.label        = label
        self.witness      = witness
        self.perGenerator = tuple( perGenerator )
        self.witnessText  = witnessText

    def __repr__( self ):
        if self.witnessText:
            return "Taxonomy( {}, {} )".format( self.label, self.witnessText )
        return "Taxonomy( {} )".format( self.label )

def _firstWitness( G, gens, cap ):
    for rho in renamings( G, cap ):
        if all( isCountUnderRenaming( g, rho ) for g in gens ):
            return rho
    return None

def classifyTaxonomy( G, generators, nec=False, cap=None, groupCap=None ):
    """
    Classifies the group generated by the given VV symmetries of G.

    count                 every generator is a count symmetry (identity value maps);
    srv_count             a single renaming of values makes every generator a count symmetry (the lexicographically first is the witness);
    urv_count             the group is generated by its elements that are count symmetries under some (element-specific) renaming;
    equicardinal_noncount otherwise;
    non_equicardinal      if nec is True (the generators belong to a non-equicardinal symmetry).

    Each generator is also labelled on its own (count, srv_count with its first witness, or equicardinal_noncount).
    Raises RenamingSpaceTooLarge if G has more than cap renamings, and OrbitCapExceeded if the group has more than groupCap elements.
    """
    gens = list( generators )
    if nec:
        return Taxonomy( LABEL_NON_EQUICARDINAL, perGenerator=[ ( LABEL_NON_EQUICARDINAL, None ) ] * len( gens ) )

    per = []
    for g in gens:
        if g.hasIdentityValueMaps():
            per.append( ( LABEL_COUNT, None ) )
        elif isRenamableToCount( g ):
            per.append( ( LABEL_SRV_COUNT, _firstWitness( G, [ g ], cap ) ) )
        else:
            per.append( ( LABEL_EQUICARDINAL, None ) )

    if all( label == LABEL_COUNT for label, _ in per ):
        return Taxonomy( LABEL_COUNT, perGenerator=per )
    witness = _firstWitness( G, gens, cap )
    if witness is not None:
        return Taxonomy( LABEL_SRV_COUNT, witness, per, formatRenaming( G, witness ) )

    group = GeneratorSet( G.vvCount(), ( g.perm for g in gens ) )
    closure = groupClosure( group, groupCap )
    renamable = [ p for p in closure if isRenamableToCount( VVPermutation( G.cardinalities, p ) ) ]
    sub = groupClosure( GeneratorSet( G.vvCount(), renamable ), groupCap )
    logger.debug( "Group of order %d; renamable elements generate a subgroup of order %d", len( closure ), len( sub ) )
    if len( sub ) == len( closure ):
        return Taxonomy( LABEL_URV_COUNT, perGenerator=per )
    return Taxonomy( LABEL_EQUICARDINAL, perGenerator=per )

def stateOrbits( G, generators, cap=None ):
    """
    Returns the orbits of the group generated by the given VV permutations on the states of G,
    as a list of sorted tuples of states ordered by their first state.
    Raises StateSpaceTooLarge if G has more than cap states.
    """
    states = G.statesArray( cap )
    gens = list( generators )
    apply = lambda g, s: g.apply( s )
    seen = set()
    out = []
    for row in states:
        s = tuple( int( x ) for x in row )
        if s in seen:
            continue
        o = tuple( sorted( orbit( s, gens, apply, cap=len( states ) ) ) )
        seen.update( o )
        out.append( o )
    return out

def equalProbabilityPartition( G, cap=None ):
    """
    Groups the states of G by exact probability (HARD features truly hard); states within 1e-12 of each other share a class.
    Returns a list of sorted tuples of states ordered by their first state.
    Raises StateSpaceTooLarge if G has more than cap states.
    """
    dist = exactDistribution( G, cap )
    items = sorted( dist.items(), key=lambda sp: sp[1] )
    classes = []
    last = None
    for s, p in items:
        if last is None or p - last > PROBABILITY_TOLERANCE:
            classes.append( [] )
        classes[-1].append( s )
        last = p
    return sorted( tuple( sorted( c ) ) for c in classes )
