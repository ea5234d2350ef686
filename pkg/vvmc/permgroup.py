"""
Permutations of the points 0..N-1, groups given by generating sets, orbits and random group elements.
"""
import logging

from collections import deque

from vvmc        import config
from vvmc.shared import (
    SizeMismatch, InvalidPermutation, OrbitCapExceeded, EmptyGroupError,
    PRA_MIN_SLOTS, PRA_BURN_IN
)

logger = logging.getLogger( __name__ )

class Permutation( tuple ):
    """
    Permutation( mapping )

    A bijection of 0..N-1 onto itself; p[x] (or p( x )) is the image of x.
    Raises InvalidPermutation if mapping isn't a bijection.
    """
    __slots__ = ()

    def __new__( cls, mapping ):
        p = tuple.__new__( cls, ( int( x ) for x in mapping ) )
        if sorted( p ) != list( range( len( p ) ) ):
            raise InvalidPermutation( "{!r} is not a bijection of 0..{:d}.".format( tuple( p ), len( p ) - 1 ) )
        return p

    @classmethod
    def _trusted( cls, mapping ):
        return tuple.__new__( cls, mapping )

    @property
    def size( self ):
        return len( self )

    def __call__( self, x ):
        return self[x]

    def __mul__( self, other ):
        """p * q is the composition p∘q."""
        return compose( self, other )

    def isIdentity( self ):
        return all( i == x for i, x in enumerate( self ) )

    def inverse( self ):
        return invert( self )

    def support( self ):
        """Return the points moved by this permutation."""
        return [ i for i, x in enumerate( self ) if i != x ]

    def cycles( self ):
        """Return the non-trivial cycles of this permutation, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range( len( self ) ):
            if start in seen or self[start] == start:
                continue
            cycle = [ start ]
            seen.add( start )
            x = self[start]
            while x != start:
                cycle.append( x )
                seen.add( x )
                x = self[x]
            out.append( tuple( cycle ) )
        return out

    def format( self, label=str ):
        """
        Return this permutation in cycle notation, e.g. "(0 1)(2 3 4)".
        label maps a point to the text printed for it. The identity is written "()".
        """
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join( "(" + " ".join( label( x ) for x in c ) + ")" for c in cycles )

    def __repr__( self ):
        return "Permutation( {} )".format( list( self ) )

def identity( n ):
    """Return the identity permutation on n points."""
    return Permutation._trusted( range( n ) )

def compose( p, q ):
    """
    Return p∘q, i.e. the permutation x -> p( q( x ) ).
    Raises SizeMismatch if p and q act on different numbers of points.
    """
    if len( p ) != len( q ):
        raise SizeMismatch( len( p ), len( q ) )
    return Permutation._trusted( p[x] for x in q )

def invert( p ):
    """Return the inverse of p."""
    out = [ 0 ] * len( p )
    for i, x in enumerate( p ):
        out[x] = i
    return Permutation._trusted( out )

def fromCycles( n, cycles ):
    """Return the permutation on n points with the given cycles."""
    out = list( range( n ) )
    for c in cycles:
        for a, b in zip( c, c[1:] + c[:1] ):
            out[a] = b
    return Permutation( out )

class GeneratorSet:
    """
    A permutation group given by generators.
    Every generator acts on groundSize points; the identity is implied and never stored.
    """
    __slots__ = ( "groundSize", "generators" )

    def __init__( self, groundSize, generators=() ):
        gens = []
        for g in generators:
            if not isinstance( g, Permutation ):
                g = Permutation( g )
            if len( g ) != groundSize:
                raise SizeMismatch( groundSize, len( g ) )
            if not g.isIdentity() and g not in gens:
                gens.append( g )
        self.groundSize = groundSize
        self.generators = tuple( gens )

    def __len__( self ):
        return len( self.generators )

    def __iter__( self ):
        return iter( self.generators )

    def isTrivial( self ):
        return not self.generators

    def __repr__( self ):
        return "GeneratorSet( {:d}, {:d} generators )".format( self.groundSize, len( self.generators ) )

def _applyPoint( g, x ):
    return g[x]

def orbit( x, generators, action=_applyPoint, cap=None ):
    """
    Return the orbit of x under the group generated by generators, as a list in breadth-first order (x first).
    action( g, x ) returns the image of x under the generator g; by default g[x].
    Raises OrbitCapExceeded if the orbit has more than cap elements (default config.getOrbitCap()).
    """
    if cap is None:
        cap = config.getOrbitCap()
    seen = { x }
    out = [ x ]
    queue = deque( out )
    while queue:
        y = queue.popleft()
        for g in generators:
            z = action( g, y )
            if z not in seen:
                seen.add( z )
                out.append( z )
                if len( out ) > cap:
                    raise OrbitCapExceeded( len( out ), cap )
                queue.append( z )
    return out

def orbitOfPoint( gens, x, cap=None ):
    """Return the orbit of point x under the group generated by the GeneratorSet gens, as a set."""
    if x < 0 or x >= gens.groundSize:
        raise InvalidPermutation( "Point {:d} is outside the ground set 0..{:d}.".format( x, gens.groundSize - 1 ) )
    return set( orbit( x, gens.generators, cap=cap ) )

def orbitPartition( gens, cap=None ):
    """Return the orbits of the group generated by gens on 0..groundSize-1, as sorted tuples ordered by smallest point."""
    seen = set()
    out = []
    for x in range( gens.groundSize ):
        if x not in seen:
            o = tuple( sorted( orbit( x, gens.generators, cap=cap ) ) )
            seen.update( o )
            out.append( o )
    return out

def groupClosure( gens, cap=None ):
    """
    Returns every element of the group generated by gens (identity included) as a set of Permutations.
    Raises OrbitCapExceeded if the group has more than cap elements (default config.getOrbitCap()).
    """
    e = identity( gens.groundSize )
    return set( orbit( e, gens.generators, lambda g, p: compose( g, p ), cap ) )

def groupOrder( gens, cap=None ):
    return len( groupClosure( gens, cap ) )

class PRASampler:
    """
    Draws (approximately) uniform random elements of the group generated by a GeneratorSet with the product replacement algorithm.

    The sampler keeps r = max( 10, 2 * |generators| ) slots, initially filled with the generators.
    Each step picks two distinct slots i and j, replaces slot i with slot_i * slot_j^±1 or slot_j^±1 * slot_i
    (side and sign chosen uniformly), and returns the new slot i.
    The first 60 steps are discarded.

    A sampler is mutable and owns its random number generator: use one sampler per chain.
    """
    __slots__ = ( "groundSize", "slots", "rng" )

    def __init__( self, gens, rng, burnIn=PRA_BURN_IN ):
        """
        gens is a GeneratorSet.
        rng is a numpy Generator (e.g. numpy.random.default_rng( seed )).
        """
        if gens.groundSize <= 0:
            raise EmptyGroupError( "Cannot sample from a group over an empty ground set." )
        self.groundSize = gens.groundSize
        self.rng = rng
        gs = gens.generators
        if not gs:
            self.slots = None
            return
        r = max( PRA_MIN_SLOTS, 2 * len( gs ) )
        self.slots = [ gs[i % len( gs )] for i in range( r ) ]
        for _ in range( burnIn ):
            self.next()
        logger.debug( "PRA sampler ready: %d slots, %d generators", r, len( gs ) )

    def next( self ):
        """Return the next random group element. A trivial group always yields the identity."""
        if self.slots is None:
            return identity( self.groundSize )
        rng = self.rng
        r = len( self.slots )
        i = int( rng.integers( r ) )
        j = int( rng.integers( r - 1 ) )
        if j >= i:
            j += 1
        other = self.slots[j]
        if rng.random() < 0.5:
            other = invert( other )
        if rng.random() < 0.5:
            self.slots[i] = compose( self.slots[i], other )
        else:
            self.slots[i] = compose( other, self.slots[i] )
        return self.slots[i]

def praNext( sampler ):
    """Return the next random group element from sampler."""
    return sampler.next()

def uniformOrbitElement( gens, x, rng, cap=None, action=_applyPoint ):
    """
    Return an exactly uniform draw from the orbit of x (enumerated by breadth-first search).
    Singleton orbits return x without consuming randomness.
    Raises OrbitCapExceeded if the orbit has more than cap elements.
    """
    generators = gens.generators if isinstance( gens, GeneratorSet ) else gens
    members = orbit( x, generators, action, cap )
    if len( members ) == 1:
        return x
    members.sort()
    return members[int( rng.integers( len( members ) ) )]
