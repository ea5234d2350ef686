import itertools
import logging

from io       import StringIO
from operator import itemgetter

import numpy as np

from vvmc        import config
from vvmc.shared import (
    MODE_CLAUSAL, MODE_CONJUNCTIVE, MODE_NAMES, HARD, INF,
    ModelFormatError, StateSpaceTooLarge, UnsatisfiableModel,
    roundWeight, describeWeight
)

logger = logging.getLogger( __name__ )

#Characters that cannot appear in a variable name (they'd be ambiguous in the text model format)
_RESERVED = frozenset( "=!#" )

#Canonical stand-ins for features that are satisfied by every state / no state regardless of the rest of their literals
_ALWAYS = ( ( -1, 0, True  ), )
_NEVER  = ( ( -1, 0, False ), )

class Variable:
    """
    A discrete random variable.
    id is the variable's dense index in its model, name is its external name and cardinality is |D_i|.
    The values of a variable are the integers 0 .. cardinality-1.
    """
    __slots__ = ( "id", "name", "cardinality" )

    def __init__( self, id, name, cardinality ):
        if not name or any( c.isspace() or c in _RESERVED for c in name ):
            raise ModelFormatError( None, "Invalid variable name \"{}\".".format( name ) )
        if cardinality < 1:
            raise ModelFormatError( None, "Variable \"{}\" must have at least one value, not {:d}.".format( name, cardinality ) )
        self.id          = id
        self.name        = name
        self.cardinality = cardinality

    def isBoolean( self ):
        return self.cardinality == 2

    def __eq__( self, other ):
        return isinstance( other, Variable ) and ( self.id, self.name, self.cardinality ) == ( other.id, other.name, other.cardinality )

    def __hash__( self ):
        return hash( ( self.id, self.name, self.cardinality ) )

    def __repr__( self ):
        return "Variable( {:d}, \"{}\", {:d} )".format( self.id, self.name, self.cardinality )

class Literal( tuple ):
    """
    Literal( var, value, positive=True )

    An assignment test on a single variable.
    A positive literal reads "X=v" and a negative one "X!=v".
    """
    __slots__ = ()

    def __new__( cls, var, value, positive=True ):
        return tuple.__new__( cls, ( int( var ), int( value ), bool( positive ) ) )

    def __getnewargs__( self ):
        return tuple( self )

    var      = property( itemgetter( 0 ) )
    value    = property( itemgetter( 1 ) )
    positive = property( itemgetter( 2 ) )

    def holds( self, s ):
        """Return True if this literal is true in state s."""
        return ( s[self[0]] == self[1] ) == self[2]

    def negated( self ):
        return Literal( self[0], self[1], not self[2] )

    def format( self, names ):
        return "{}{}={:d}".format( "" if self[2] else "!", names[self[0]], self[1] )

class Feature:
    """
    A weighted feature: a clause (kind MODE_CLAUSAL) or conjunction (kind MODE_CONJUNCTIVE) of literals.
    Literals are stored sorted by (var, value, positive) with duplicates removed.
    weight is a real log-linear weight, or HARD.
    """
    __slots__ = ( "literals", "weight", "kind" )

    def __init__( self, literals, weight, kind=MODE_CLAUSAL ):
        if kind not in ( MODE_CLAUSAL, MODE_CONJUNCTIVE ):
            raise ModelFormatError( None, "Unknown feature kind {!r}.".format( kind ) )
        if weight != weight:
            raise ModelFormatError( None, "Feature weights cannot be NaN." )
        self.literals = tuple( sorted( set( l if isinstance( l, Literal ) else Literal( *l ) for l in literals ) ) )
        self.weight   = HARD if weight == HARD else float( weight )
        self.kind     = kind

    def isHard( self ):
        return self.weight == HARD

    def variables( self ):
        """Return a sorted tuple of the ids of the variables this feature mentions."""
        return tuple( sorted( { l[0] for l in self.literals } ) )

    def evaluate( self, s ):
        """Return True if this feature is satisfied by state s."""
        if self.kind == MODE_CLAUSAL:
            return any( ( s[v] == x ) == p for v, x, p in self.literals )
        return all( ( s[v] == x ) == p for v, x, p in self.literals )

    def valueSets( self, cardinalities ):
        """
        Returns a dict mapping each variable this feature mentions to the set of its values that make the feature's literals on it true.
        For a clause this is the union of its literals' true sets (the clause is true iff some variable takes a value in its set).
        For a conjunction it's the intersection (the conjunction is true iff every variable takes a value in its set).
        """
        clausal = self.kind == MODE_CLAUSAL
        sets = {}
        for v, x, p in self.literals:
            t = { x } if p else set( range( cardinalities[v] ) ) - { x }
            if v not in sets:
                sets[v] = t
            elif clausal:
                sets[v] |= t
            else:
                sets[v] &= t
        return { v: frozenset( t ) for v, t in sets.items() }

    def canonicalLiterals( self, cardinalities ):
        """
        Returns a canonical literal tuple for this feature.
        Two features of the same kind have equal canonical literals iff they are satisfied by the same states.
        """
        sets = self.valueSets( cardinalities )
        out = []
        if self.kind == MODE_CLAUSAL:
            for v in sorted( sets ):
                t = sets[v]
                if len( t ) == cardinalities[v]:
                    return _ALWAYS
                out.extend( ( v, x, True ) for x in sorted( t ) )
        else:
            for v in sorted( sets ):
                t = sets[v]
                if not t:
                    return _NEVER
                if len( t ) == cardinalities[v]:
                    continue
                if len( t ) == 1:
                    out.append( ( v, next( iter( t ) ), True ) )
                else:
                    out.extend( ( v, x, False ) for x in range( cardinalities[v] ) if x not in t )
        return tuple( out )

    def format( self, names ):
        return " ".join( [ describeWeight( self.weight ) ] + [ l.format( names ) for l in self.literals ] )

    def __repr__( self ):
        return "Feature( {!r}, {}, {} )".format( list( self.literals ), describeWeight( self.weight ), MODE_NAMES[self.kind] )

class GraphicalModel:
    """
    A log-linear model over discrete variables.

    P(s) is proportional to exp( sum of the weights of the features s satisfies ).
    Every feature of a model has the same kind as the model.
    GraphicalModels are never modified after construction; operations that transform a model return a new one.

    Two models are equal if their canonical forms are equal (see canonical()).
    """
    __slots__ = ( "variables", "features", "kind", "_names", "_offsets", "_touching", "_key" )

    def __init__( self, variables, features=(), kind=MODE_CLAUSAL ):
        """
        variables is a sequence of Variables, or of ( name, cardinality ) pairs that will be numbered in order.
        features is a sequence of Features whose literals reference variables by id.
        kind is MODE_CLAUSAL or MODE_CONJUNCTIVE.
        """
        vs = []
        for i, v in enumerate( variables ):
            if not isinstance( v, Variable ):
                v = Variable( i, *v )
            elif v.id != i:
                raise ModelFormatError( None, "Variable \"{}\" has id {:d} but is at position {:d}.".format( v.name, v.id, i ) )
            vs.append( v )
        self.variables = tuple( vs )
        self._names = {}
        for v in self.variables:
            if v.name in self._names:
                raise ModelFormatError( None, "Variable \"{}\" is declared twice.".format( v.name ) )
            self._names[v.name] = v.id

        cards = self.cardinalities
        fs = tuple( features )
        for f in fs:
            if f.kind != kind:
                raise ModelFormatError( None, "A {} feature cannot appear in a {} model.".format( MODE_NAMES[f.kind], MODE_NAMES[kind] ) )
            for v, x, p in f.literals:
                if v < 0 or v >= len( cards ):
                    raise ModelFormatError( None, "Feature references unknown variable {:d}.".format( v ) )
                if x < 0 or x >= cards[v]:
                    raise ModelFormatError( None, "Value {:d} is out of range for \"{}\" ({:d} values).".format( x, self.variables[v].name, cards[v] ) )
        self.features = fs
        self.kind     = kind

        offsets = [ 0 ]
        for c in cards:
            offsets.append( offsets[-1] + c )
        self._offsets = tuple( offsets )

        touching = [ [] for _ in self.variables ]
        for j, f in enumerate( fs ):
            for v in f.variables():
                touching[v].append( j )
        self._touching = tuple( tuple( t ) for t in touching )
        self._key = None

    @property
    def cardinalities( self ):
        return tuple( v.cardinality for v in self.variables )

    @property
    def names( self ):
        return tuple( v.name for v in self.variables )

    @property
    def n( self ):
        return len( self.variables )

    @property
    def m( self ):
        return len( self.features )

    def isBoolean( self ):
        return all( v.cardinality == 2 for v in self.variables )

    def index( self, name ):
        """Return the id of the variable with the given name. Raises KeyError if there's no such variable."""
        return self._names[name]

    def variable( self, name ):
        return self.variables[self._names[name]]

    def stateCount( self ):
        """Return the number of states, prod |D_i|."""
        total = 1
        for v in self.variables:
            total *= v.cardinality
        return total

    def iterStates( self ):
        """Iterate over every state in lexicographic order (the first variable is the most significant)."""
        return itertools.product( *( range( v.cardinality ) for v in self.variables ) )

    def statesArray( self, cap=None ):
        """
        Return every state as the rows of an integer numpy array, in the order of iterStates().
        Raises StateSpaceTooLarge if there are more than cap states (default: config.getStateCap()).
        """
        size = self.stateCount()
        if cap is None:
            cap = config.getStateCap()
        if size > cap:
            raise StateSpaceTooLarge( size, cap )
        if not self.variables:
            return np.zeros( ( 1, 0 ), dtype=np.int64 )
        return np.indices( self.cardinalities ).reshape( self.n, -1 ).T.astype( np.int64 )

    def stateIndex( self, s ):
        """Return the row of state s in statesArray()."""
        if not self.variables:
            return 0
        return int( np.ravel_multi_index( tuple( s ), self.cardinalities ) )

    #Variable-value (VV) pairs are encoded as dense indices: (i, v) -> offset_i + v.
    @property
    def vvOffsets( self ):
        return self._offsets

    def vvCount( self ):
        return self._offsets[-1]

    def vvIndex( self, var, value ):
        return self._offsets[var] + value

    def vvPair( self, index ):
        """Return the ( var, value ) pair encoded by the given VV index."""
        var = int( np.searchsorted( self._offsets, index, side="right" ) ) - 1
        return ( var, index - self._offsets[var] )

    def featuresOf( self, var ):
        """Return the indices of the features that mention the given variable."""
        return self._touching[var]

    def isValidState( self, s ):
        return len( s ) == self.n and all( 0 <= x < v.cardinality for x, v in zip( s, self.variables ) )

    def components( self ):
        """
        Returns the connected components of the variable interaction graph (two variables interact if a feature mentions both)
        as a list of sorted tuples of variable ids, ordered by their smallest id.
        """
        parent = list( range( self.n ) )
        def find( x ):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        for f in self.features:
            vs = f.variables()
            for v in vs[1:]:
                a, b = find( vs[0] ), find( v )
                if a != b:
                    parent[max( a, b )] = min( a, b )
        groups = {}
        for v in range( self.n ):
            groups.setdefault( find( v ), [] ).append( v )
        return [ tuple( groups[k] ) for k in sorted( groups ) ]

    def restrict( self, varIds ):
        """
        Return the submodel over the given variables (renumbered in the given order) and every feature that mentions only them.
        """
        varIds = tuple( varIds )
        remap = { v: i for i, v in enumerate( varIds ) }
        variables = [ ( self.variables[v].name, self.variables[v].cardinality ) for v in varIds ]
        features = []
        for f in self.features:
            vs = f.variables()
            if vs and all( v in remap for v in vs ):
                features.append( Feature( [ ( remap[v], x, p ) for v, x, p in f.literals ], f.weight, f.kind ) )
        return GraphicalModel( variables, features, self.kind )

    def withFeatures( self, features, kind=None ):
        """Return a model over the same variables with the given features."""
        return GraphicalModel( self.variables, features, self.kind if kind is None else kind )

    def canonical( self ):
        """
        Returns the canonical form of this model: its cardinalities, its kind and its sorted ( rounded weight, canonical literals ) pairs.
        Two models with equal canonical forms define the same distribution.
        """
        if self._key is None:
            cards = self.cardinalities
            fs = sorted( ( roundWeight( f.weight ), f.canonicalLiterals( cards ) ) for f in self.features )
            self._key = ( cards, self.kind, tuple( fs ) )
        return self._key

    def __eq__( self, other ):
        return isinstance( other, GraphicalModel ) and self.canonical() == other.canonical()

    def __hash__( self ):
        return hash( self.canonical() )

    def print( self, maxlen=INF, fn=print ):
        """
        Pretty-print the model.
        maxlen is the maximum number of variables / features to print; the remainder is summarized with "...".
        fn is the callable used to print a line of text, and defaults to the built-in print function.
        """
        names = self.names
        fn( "GraphicalModel( {} ): {:d} variable{}, {:d} feature{} {{".format(
            MODE_NAMES[self.kind], self.n, "s" if self.n != 1 else "", self.m, "s" if self.m != 1 else ""
        ) )
        for i, v in enumerate( self.variables ):
            if i >= maxlen:
                fn( "    ..." )
                break
            fn( "    var {} {:d}".format( v.name, v.cardinality ) )
        for i, f in enumerate( self.features ):
            if i >= maxlen:
                fn( "    ..." )
                break
            fn( "    feature " + f.format( names ) )
        fn( "}" )

    def sprint( self, maxlen=INF ):
        """Pretty-print the model to a string and return it. See help( GraphicalModel.print )."""
        with StringIO() as out:
            self.print( maxlen, lambda x: out.write( x + "\n" ) )
            return out.getvalue()

    def __repr__( self ):
        return "GraphicalModel( {}, {:d} variables, {:d} features )".format( MODE_NAMES[self.kind], self.n, self.m )

class Distribution:
    """
    An exactly enumerated distribution.
    states is an integer array with one state per row (in the order of GraphicalModel.iterStates()),
    probabilities the matching probability vector.
    """
    __slots__ = ( "model", "states", "probabilities" )

    def __init__( self, model, states, probabilities ):
        self.model         = model
        self.states        = states
        self.probabilities = probabilities

    def __len__( self ):
        return len( self.probabilities )

    def __getitem__( self, s ):
        return float( self.probabilities[self.model.stateIndex( s )] )

    def __iter__( self ):
        return ( tuple( int( x ) for x in row ) for row in self.states )

    def items( self ):
        for row, p in zip( self.states, self.probabilities ):
            yield tuple( int( x ) for x in row ), float( p )

    def marginals( self ):
        """Return one probability array per variable."""
        out = []
        for i, v in enumerate( self.model.variables ):
            out.append( np.bincount( self.states[:, i], weights=self.probabilities, minlength=v.cardinality ) )
        return out

def evaluateFeature( f, s ):
    """Return True if feature f is satisfied by state s."""
    return f.evaluate( s )

def featureTruth( f, states ):
    """Return a Boolean vector: for each row of states, whether f is satisfied."""
    if not f.literals:
        return np.full( len( states ), f.kind == MODE_CONJUNCTIVE )
    truth = None
    for v, x, p in f.literals:
        t = ( states[:, v] == x ) if p else ( states[:, v] != x )
        if truth is None:
            truth = t
        elif f.kind == MODE_CLAUSAL:
            truth = truth | t
        else:
            truth = truth & t
    return truth

def logWeight( G, s, hardWeight=None ):
    """
    Return the sum of the weights of the features of G satisfied by s.
    Satisfied HARD features contribute hardWeight (default: config.getHardWeight()).
    """
    if hardWeight is None:
        hardWeight = config.getHardWeight()
    total = 0.0
    for f in G.features:
        if f.evaluate( s ):
            total += hardWeight if f.weight == HARD else f.weight
    return total

def logWeights( G, states, hardWeight=None ):
    """
    Vectorized log weights of the rows of states.
    If hardWeight is None, HARD features are truly hard: states violating one get -inf.
    """
    scores = np.zeros( len( states ) )
    for f in G.features:
        t = featureTruth( f, states )
        if f.weight != HARD:
            scores += f.weight * t
        elif hardWeight is None:
            scores[~t] = -INF
        else:
            scores += hardWeight * t
    return scores

def exactDistribution( G, cap=None, hardWeight=None ):
    """
    Enumerates every state of G and returns its Distribution.

    If hardWeight is None HARD features are truly hard (states violating them get probability 0);
    otherwise they are treated as soft features with the given weight, which is the distribution samplers target.
    Raises StateSpaceTooLarge if G has more than cap states (default config.getStateCap()),
    and UnsatisfiableModel if every state violates a hard feature.
    """
    states = G.statesArray( cap )
    scores = logWeights( G, states, hardWeight )
    top = scores.max()
    if top == -INF:
        raise UnsatisfiableModel( "Every state violates a hard feature." )
    p = np.exp( scores - top )
    p /= p.sum()
    return Distribution( G, states, p )

def exactMarginals( G, cap=None, hardWeight=None ):
    """
    Returns the exact marginals of G as a list with one probability array per variable.

    Independent components of G are enumerated separately, so cap applies to the largest component rather than the whole model.
    Features without literals belong to no component; they're constant, so only a false HARD one matters (every state is then impossible).
    """
    if hardWeight is None:
        for f in G.features:
            if not f.literals and f.isHard() and not f.evaluate( () ):
                raise UnsatisfiableModel( "Every state violates a hard feature." )
    out = [ None ] * G.n
    for component in G.components():
        sub = G.restrict( component )
        if not sub.features:
            for v in component:
                c = G.variables[v].cardinality
                out[v] = np.full( c, 1.0 / c )
            continue
        logger.debug( "Enumerating component of %d variables (%d states)", sub.n, sub.stateCount() )
        for v, m in zip( component, exactDistribution( sub, cap, hardWeight ).marginals() ):
            out[v] = m
    return out
