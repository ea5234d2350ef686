"""
Gibbs sampling and the orbital samplers built on it.

Every sampler is a Gibbs step followed by a move that never changes a state's probability:
    gibbs        no move;
    orbital      a uniform draw from the state's orbit under the variable symmetries;
    vv-orbital   a uniform draw from the state's orbit under the VV symmetries;
    nec-orbital  a Metropolis-Hastings move between suborbits under the NEC symmetries, then a uniform draw within the suborbit.
"""
import time
import logging
import itertools

from collections import OrderedDict

import numpy as np

from vvmc           import config
from vvmc.shared    import (
    ConfigError, VVMCError, OrbitCapExceeded, HARD, KERNEL_STATE_CAP, ORBIT_CACHE_STATES
)
from vvmc.model     import featureTruth, logWeight
from vvmc.permgroup import GeneratorSet, PRASampler, orbit
from vvmc.symmetry  import VVPermutation, embedVariableSymmetry, stateOrbits
from vvmc.autograph import vvSymmetries, variableSymmetries
from vvmc.reduction import necSymmetries

logger = logging.getLogger( __name__ )

#Algorithms
ALGORITHM_GIBBS       = "gibbs"
ALGORITHM_ORBITAL     = "orbital"
ALGORITHM_VV_ORBITAL  = "vv-orbital"
ALGORITHM_NEC_ORBITAL = "nec-orbital"

ALGORITHMS = (
    ALGORITHM_GIBBS,
    ALGORITHM_ORBITAL,
    ALGORITHM_VV_ORBITAL,
    ALGORITHM_NEC_ORBITAL
)

#Orbit strategies
STRATEGY_AUTO      = "auto"
STRATEGY_EXACT_BFS = "exact-bfs"
STRATEGY_PRA       = "pra"

STRATEGIES = (
    STRATEGY_AUTO,
    STRATEGY_EXACT_BFS,
    STRATEGY_PRA
)

#Tolerance for the log weight check of orbit moves
MOVE_TOLERANCE = 1e-12

#Orbit cache marker for states whose orbit exceeds the cap
_TOO_LARGE = object()

class ChainConfig:
    """
    ChainConfig( algorithm, steps, seed=0, orbitStrategy="auto", burnIn=0, hardWeight=None, snapshotEvery=None, orbitCap=None, initial=None, checkMoves=False )

    Settings of one Markov chain.
    steps counts the tallied steps; burnIn steps run before them and aren't tallied.
    hardWeight is the weight HARD features get while sampling (default config.getHardWeight()).
    A snapshot is taken every snapshotEvery steps and after the last step (only after the last if snapshotEvery is None).
    initial is the starting state (all zeros by default).
    checkMoves makes every symmetry move verify that the log weight is unchanged.
    Raises ConfigError if a setting is invalid.
    """
    __slots__ = ( "algorithm", "steps", "seed", "orbitStrategy", "burnIn", "hardWeight", "snapshotEvery", "orbitCap", "initial", "checkMoves" )

    def __init__( self, algorithm, steps, seed=0, orbitStrategy=STRATEGY_AUTO, burnIn=0, hardWeight=None, snapshotEvery=None, orbitCap=None, initial=None, checkMoves=False ):
        if algorithm not in ALGORITHMS:
            raise ConfigError( "Unknown algorithm {!r}; expected one of {}.".format( algorithm, ", ".join( ALGORITHMS ) ) )
        if orbitStrategy not in STRATEGIES:
            raise ConfigError( "Unknown orbit strategy {!r}; expected one of {}.".format( orbitStrategy, ", ".join( STRATEGIES ) ) )
        if not isinstance( steps, int ) or steps <= 0:
            raise ConfigError( "The number of steps must be a positive integer, not {!r}.".format( steps ) )
        if burnIn < 0:
            raise ConfigError( "Burn-in can't be negative." )
        if snapshotEvery is not None and snapshotEvery <= 0:
            raise ConfigError( "The snapshot interval must be positive." )
        if orbitCap is not None and orbitCap <= 0:
            raise ConfigError( "The orbit cap must be positive." )
        self.algorithm     = algorithm
        self.steps         = steps
        self.seed          = seed
        self.orbitStrategy = orbitStrategy
        self.burnIn        = burnIn
        self.hardWeight    = config.getHardWeight() if hardWeight is None else float( hardWeight )
        self.snapshotEvery = snapshotEvery
        self.orbitCap      = orbitCap
        self.initial       = None if initial is None else tuple( initial )
        self.checkMoves    = checkMoves

    def __repr__( self ):
        return "ChainConfig( {!r}, {:d}, seed={!r}, orbitStrategy={!r} )".format( self.algorithm, self.steps, self.seed, self.orbitStrategy )

class ChainSymmetries:
    """
    The symmetries a chain moves along.
    generators are VVPermutations acting on the states of model: the original model for orbital and vv-orbital,
    the reduced model for nec-orbital (in which case reduced is its ReducedModel).
    """
    __slots__ = ( "model", "generators", "reduced" )

    def __init__( self, model, generators=(), reduced=None ):
        self.model      = model
        self.generators = tuple( generators )
        self.reduced    = reduced

    def __repr__( self ):
        return "ChainSymmetries( {:d} generators{} )".format( len( self.generators ), ", reduced" if self.reduced else "" )

def prepareSymmetries( G, algorithm, budget=None ):
    """Compute the symmetries the given algorithm needs for G."""
    if algorithm == ALGORITHM_GIBBS:
        return ChainSymmetries( G )
    if algorithm == ALGORITHM_ORBITAL:
        return ChainSymmetries( G, [ embedVariableSymmetry( theta, G ) for theta in variableSymmetries( G, budget ) ] )
    if algorithm == ALGORITHM_VV_ORBITAL:
        return ChainSymmetries( G, vvSymmetries( G, budget ) )
    if algorithm == ALGORITHM_NEC_ORBITAL:
        R, taus = necSymmetries( G, budget )
        return ChainSymmetries( R.model, [ t.reducedVv for t in taus ], R )
    raise ConfigError( "Unknown algorithm {!r}.".format( algorithm ) )

def _applyVv( g, s ):
    return g.apply( s )

class StateGroup:
    """
    StateGroup( model, generators, rng, strategy="auto", cap=None, cacheSize=ORBIT_CACHE_STATES )

    Uniform orbit moves for a group of VV permutations acting on the states of model.

    exact-bfs enumerates the orbit of a state and draws uniformly from it;
    pra applies a random group element from a per-chain product replacement sampler;
    auto uses exact-bfs unless an orbit has more than cap states, in which case that orbit falls back to pra.
    Enumerated orbits (and states whose orbit was too large) are kept in a least recently used cache of at most cacheSize states.
    Singleton orbits and trivial groups never consume randomness.
    """
    __slots__ = ( "model", "generators", "rng", "strategy", "cap", "cacheSize", "_orbits", "_pra" )

    def __init__( self, model, generators, rng, strategy=STRATEGY_AUTO, cap=None, cacheSize=ORBIT_CACHE_STATES ):
        if cacheSize < 1:
            raise ConfigError( "The orbit cache must hold at least one state." )
        self.model      = model
        self.generators = tuple( generators )
        self.rng        = rng
        self.strategy   = strategy
        self.cap        = config.getOrbitCap() if cap is None else cap
        self.cacheSize  = cacheSize
        self._orbits    = OrderedDict()
        self._pra       = None

    def isTrivial( self ):
        return not self.generators

    def cachedStates( self ):
        """Return the number of states the orbit cache currently holds."""
        return len( self._orbits )

    def _remember( self, keys, value ):
        for t in keys:
            self._orbits[t] = value
            self._orbits.move_to_end( t )
        while len( self._orbits ) > self.cacheSize:
            self._orbits.popitem( last=False )

    def orbit( self, s ):
        """
        Return the orbit of s as a sorted list (cached).
        Raises OrbitCapExceeded if it has more than cap states.
        """
        members = self._orbits.get( s )
        if members is None or members is _TOO_LARGE:
            try:
                members = sorted( orbit( s, self.generators, _applyVv, self.cap ) )
            except OrbitCapExceeded:
                self._remember( ( s, ), _TOO_LARGE )
                raise
            #Every member maps to the same list; an orbit bigger than the cache is only keyed by s
            self._remember( members if len( members ) <= self.cacheSize else ( s, ), members )
        else:
            self._orbits.move_to_end( s )
        return members

    def _praMove( self, s ):
        if self._pra is None:
            group = GeneratorSet( self.model.vvCount(), ( g.perm for g in self.generators ) )
            self._pra = PRASampler( group, self.rng )
        return VVPermutation( self.model.cardinalities, self._pra.next() ).apply( s )

    def move( self, s ):
        """Return a uniform draw from the orbit of s."""
        if not self.generators:
            return s
        if self.strategy == STRATEGY_PRA:
            return self._praMove( s )
        if self.strategy == STRATEGY_AUTO and self._orbits.get( s ) is _TOO_LARGE:
            self._orbits.move_to_end( s )
            return self._praMove( s )
        try:
            members = self.orbit( s )
        except OrbitCapExceeded:
            if self.strategy == STRATEGY_EXACT_BFS:
                raise
            logger.debug( "Orbit of %r exceeds %d states; using product replacement", s, self.cap )
            return self._praMove( s )
        if len( members ) == 1:
            return s
        return members[int( self.rng.integers( len( members ) ) )]

def conditionalLogWeights( G, s, var, hardWeight=None ):
    """Return the unnormalized log conditional of var given the rest of s, computed from the features that mention var."""
    if hardWeight is None:
        hardWeight = config.getHardWeight()
    c = G.variables[var].cardinality
    rows = np.tile( np.asarray( s, dtype=np.int64 ), ( c, 1 ) )
    rows[:, var] = np.arange( c )
    scores = np.zeros( c )
    for k in G.featuresOf( var ):
        f = G.features[k]
        scores += ( hardWeight if f.weight == HARD else f.weight ) * featureTruth( f, rows )
    return scores

def conditional( G, s, var, hardWeight=None ):
    """Return the full conditional distribution of var given the rest of s."""
    scores = conditionalLogWeights( G, s, var, hardWeight )
    p = np.exp( scores - scores.max() )
    return p / p.sum()

def gibbsStep( G, s, rng, hardWeight=None ):
    """
    Resamples one uniformly chosen variable of s from its full conditional.
    Returns the new state as a tuple.
    """
    if not G.n:
        return tuple( s )
    out = list( s )
    i = int( rng.integers( G.n ) )
    c = G.variables[i].cardinality
    if c > 1:
        out[i] = int( rng.choice( c, p=conditional( G, out, i, hardWeight ) ) )
    return tuple( out )

def orbitalStep( G, group, s, rng, hardWeight=None ):
    """A Gibbs step followed by a uniform draw from the orbit of the new state under group (a StateGroup)."""
    return group.move( gibbsStep( G, s, rng, hardWeight ) )

def necAcceptance( R, u1, u2 ):
    """Return the probability of accepting the move from reduced state u1 to u2: min( 1, c( u2 ) / c( u1 ) )."""
    return min( 1.0, R.suborbitSize( u2 ) / R.suborbitSize( u1 ) )

def necProposal( R, group, u, rng ):
    """
    Proposes a reduced state uniformly from the orbit of the reduced state u under group (a StateGroup over R.model)
    and accepts it with probability min( 1, c( u'' ) / c( u ) ).
    Returns ( proposal, accepted ).
    """
    proposal = group.move( u )
    if proposal == u:
        return proposal, True
    a = necAcceptance( R, u, proposal )
    if a >= 1.0:
        return proposal, True
    return proposal, bool( rng.random() < a )

def sampleSuborbit( R, u, rng ):
    """Return a uniform draw from the states of the original model whose reduced state is u."""
    out = []
    for i, k in enumerate( u ):
        cls = R.classes.classes[i][k]
        out.append( cls[int( rng.integers( len( cls ) ) )] if len( cls ) > 1 else cls[0] )
    return tuple( out )

def necOrbitalStep( G, R, group, s, rng, hardWeight=None ):
    """
    A Gibbs step in G, then a Metropolis-Hastings move between the suborbits of the new state's reduced orbit,
    then a uniform draw from the winning suborbit (also after a rejection).
    """
    s = gibbsStep( G, s, rng, hardWeight )
    u = R.toReduced( s )
    proposal, accepted = necProposal( R, group, u, rng )
    return sampleSuborbit( R, proposal if accepted else u, rng )

class Snapshot:
    """
    Snapshot( step, wallMs, marginals )

    Marginal estimates after step tallied steps; marginals has one probability array per variable.
    """
    __slots__ = ( "step", "wallMs", "marginals" )

    def __init__( self, step, wallMs, marginals ):
        self.step      = step
        self.wallMs    = wallMs
        self.marginals = marginals

    def rows( self, names ):
        """Yield ( step, wall_ms, var, value, estimate ) for every variable-value pair."""
        for i, m in enumerate( self.marginals ):
            for x, p in enumerate( m ):
                yield ( self.step, self.wallMs, names[i], x, float( p ) )

    def __repr__( self ):
        return "Snapshot( {:d}, {:.3f} )".format( self.step, self.wallMs )

class ChainState:
    """
    ChainState( G, cfg, symmetries=None )

    A running chain: the current state, its random number generator, its group handle, a step counter and visit tallies.
    symmetries is a ChainSymmetries; it's computed with prepareSymmetries() when omitted.
    Raises ConfigError if cfg.initial isn't a valid state of G.
    """
    __slots__ = ( "model", "cfg", "current", "rng", "group", "reduced", "step", "tallies" )

    def __init__( self, G, cfg, symmetries=None ):
        if symmetries is None:
            symmetries = prepareSymmetries( G, cfg.algorithm )
        if cfg.algorithm == ALGORITHM_NEC_ORBITAL and symmetries.reduced is None:
            raise ConfigError( "nec-orbital needs a reduced model." )
        initial = cfg.initial if cfg.initial is not None else ( 0, ) * G.n
        if not G.isValidState( initial ):
            raise ConfigError( "{!r} is not a state of the model.".format( initial ) )
        self.model   = G
        self.cfg     = cfg
        self.current = tuple( initial )
        self.rng     = np.random.default_rng( cfg.seed )
        self.reduced = symmetries.reduced
        self.group   = StateGroup( symmetries.model, symmetries.generators, self.rng, cfg.orbitStrategy, cfg.orbitCap )
        self.step    = 0
        self.tallies = [ np.zeros( v.cardinality, dtype=np.int64 ) for v in G.variables ]
        logger.debug( "Chain %r ready with %d generators", cfg, len( symmetries.generators ) )

    def _check( self, before, after ):
        hw = self.cfg.hardWeight
        a, b = logWeight( self.model, before, hw ), logWeight( self.model, after, hw )
        if abs( a - b ) > MOVE_TOLERANCE * max( 1.0, abs( a ) ):
            raise VVMCError( "Symmetry move from {!r} to {!r} changed the log weight from {!r} to {!r}.".format( before, after, a, b ) )

    def advance( self ):
        """Take one step (without tallying it) and return the new state."""
        G, rng, hw = self.model, self.rng, self.cfg.hardWeight
        s = gibbsStep( G, self.current, rng, hw )
        if self.reduced is not None:
            u = self.reduced.toReduced( s )
            proposal, accepted = necProposal( self.reduced, self.group, u, rng )
            t = sampleSuborbit( self.reduced, proposal if accepted else u, rng )
            if self.cfg.checkMoves:
                self._check( s, t )
        else:
            t = self.group.move( s )
            if self.cfg.checkMoves:
                self._check( s, t )
        self.current = t
        return t

    def tally( self ):
        for i, x in enumerate( self.current ):
            self.tallies[i][x] += 1
        self.step += 1

    def marginals( self ):
        """Return the visit frequencies of every variable's values."""
        if not self.step:
            return [ np.full( len( t ), 1.0 / len( t ) ) for t in self.tallies ]
        return [ t / self.step for t in self.tallies ]

def runChain( G, cfg, symmetries=None, clock=time.perf_counter ):
    """
    Runs a chain and yields a Snapshot every cfg.snapshotEvery steps and after the last step.
    clock returns seconds; pass None to report wall_ms as 0 (the snapshots are then fully determined by the seed).
    """
    chain = ChainState( G, cfg, symmetries )
    start = clock() if clock else 0.0
    for _ in range( cfg.burnIn ):
        chain.advance()
    every = cfg.snapshotEvery
    for k in range( 1, cfg.steps + 1 ):
        chain.advance()
        chain.tally()
        if k == cfg.steps or ( every and k % every == 0 ):
            wall = ( clock() - start ) * 1000.0 if clock else 0.0
            yield Snapshot( k, wall, chain.marginals() )

def gibbsKernel( G, states, hardWeight ):
    """Return the random-scan Gibbs transition matrix over the rows of states."""
    N = len( states )
    K = np.zeros( ( N, N ) )
    if not G.n:
        return np.eye( N )
    strides = np.ones( G.n, dtype=np.int64 )
    for i in range( G.n - 2, -1, -1 ):
        strides[i] = strides[i + 1] * G.cardinalities[i + 1]
    for a, row in enumerate( states ):
        for i in range( G.n ):
            p = conditional( G, row, i, hardWeight )
            base = a - int( row[i] ) * strides[i]
            for x in range( len( p ) ):
                K[a, base + x * strides[i]] += p[x] / G.n
    return K

def orbitKernel( G, generators ):
    """Return the matrix of uniform orbit moves for the group generated by generators (VV permutations of G)."""
    N = G.stateCount()
    O = np.zeros( ( N, N ) )
    for members in stateOrbits( G, generators, N ):
        idx = [ G.stateIndex( s ) for s in members ]
        O[np.ix_( idx, idx )] = 1.0 / len( idx )
    return O

def necKernel( G, R, generators ):
    """Return the matrix of the Metropolis-Hastings suborbit move followed by a uniform suborbit draw."""
    N = G.stateCount()
    M = np.zeros( ( N, N ) )
    classes = R.classes.classes
    def suborbit( u ):
        return [ G.stateIndex( s ) for s in itertools.product( *( classes[i][k] for i, k in enumerate( u ) ) ) ]
    orbits = {}
    for members in stateOrbits( R.model, generators ):
        for u in members:
            orbits[u] = members
    for row in G.statesArray( N ):
        s = tuple( int( x ) for x in row )
        a = G.stateIndex( s )
        u = R.toReduced( s )
        members = orbits[u]
        q = 1.0 / len( members )
        moves = { u: 0.0 }
        for v in members:
            acc = necAcceptance( R, u, v ) if v != u else 1.0
            moves[v] = moves.get( v, 0.0 ) + q * acc
            moves[u] += q * ( 1.0 - acc )
        for v, mass in moves.items():
            idx = suborbit( v )
            M[a, idx] += mass / len( idx )
    return M

def explicitKernel( G, cfg, symmetries=None ):
    """
    Returns the exact transition matrix of the sampler cfg.algorithm over the states of G (in statesArray() order),
    with HARD features weighted cfg.hardWeight. Orbit moves are taken as exactly uniform.
    Raises StateSpaceTooLarge if G has more than 4096 states.
    """
    states = G.statesArray( KERNEL_STATE_CAP )
    if symmetries is None:
        symmetries = prepareSymmetries( G, cfg.algorithm )
    K = gibbsKernel( G, states, cfg.hardWeight )
    if cfg.algorithm == ALGORITHM_GIBBS or ( not symmetries.generators and symmetries.reduced is None ):
        return K
    if cfg.algorithm == ALGORITHM_NEC_ORBITAL:
        return K @ necKernel( G, symmetries.reduced, symmetries.generators )
    return K @ orbitKernel( G, symmetries.generators )
