"""
KL-divergence experiments: run several samplers with several seeds on one model and compare their marginal estimates with the truth.
"""
import os
import csv
import math
import time
import logging
import statistics

from concurrent.futures import ProcessPoolExecutor

import numpy as np

from vvmc           import config
from vvmc.shared    import ConfigError, KL_EPSILON
from vvmc.model     import exactMarginals
from vvmc.parse     import read
from vvmc.samplers  import (
    ChainConfig, Snapshot, runChain, prepareSymmetries,
    ALGORITHMS, ALGORITHM_GIBBS, ALGORITHM_ORBITAL, STRATEGY_AUTO
)
from vvmc.domains   import binarize

logger = logging.getLogger( __name__ )

#Orbital MCMC on the binarized model, with marginals projected back onto the original variables
ALGORITHM_BINARIZED_ORBITAL = "binarized-orbital"

EXPERIMENT_ALGORITHMS = ALGORITHMS + ( ALGORITHM_BINARIZED_ORBITAL, )

TRUTH_EXACT      = "exact"
TRUTH_LONG_GIBBS = "long-gibbs"

SNAPSHOT_HEADER = ( "step", "wall_ms", "var", "value", "estimate" )
KL_HEADER       = ( "algo", "seed", "step", "wall_ms", "kl" )
EXACT_HEADER    = ( "var", "value", "probability" )

def formatNumber( x ):
    """Numbers in every CSV are written with 6 significant digits."""
    return "{:.6g}".format( x )

class ExperimentSpec:
    """
    ExperimentSpec( model, algorithms, steps, seeds, out, snapshotEvery=None, truth="exact", truthSteps=None, truthSeed=0,
                    orbitStrategy="auto", hardWeight=None, deterministic=False, jobs=1 )

    model is a GraphicalModel or the path of a model file.
    truth is "exact" (component-wise enumeration) or "long-gibbs" (a Gibbs chain of truthSteps steps seeded with truthSeed).
    With deterministic set, wall_ms is written as 0 so that reruns produce identical files.
    Raises ConfigError if the specification is invalid.
    """
    __slots__ = ( "model", "algorithms", "steps", "seeds", "out", "snapshotEvery", "truth", "truthSteps", "truthSeed",
                  "orbitStrategy", "hardWeight", "deterministic", "jobs" )

    def __init__( self, model, algorithms, steps, seeds, out, snapshotEvery=None, truth=TRUTH_EXACT, truthSteps=None, truthSeed=0,
                  orbitStrategy=STRATEGY_AUTO, hardWeight=None, deterministic=False, jobs=1 ):
        if isinstance( model, str ):
            model = read( model )
        if not algorithms:
            raise ConfigError( "An experiment needs at least one algorithm." )
        for a in algorithms:
            if a not in EXPERIMENT_ALGORITHMS:
                raise ConfigError( "Unknown algorithm {!r}; expected one of {}.".format( a, ", ".join( EXPERIMENT_ALGORITHMS ) ) )
        if not seeds:
            raise ConfigError( "An experiment needs at least one seed." )
        if steps <= 0:
            raise ConfigError( "The number of steps must be positive." )
        if truth not in ( TRUTH_EXACT, TRUTH_LONG_GIBBS ):
            raise ConfigError( "Unknown truth {!r}; expected exact or long-gibbs.".format( truth ) )
        if truth == TRUTH_LONG_GIBBS and not truthSteps:
            raise ConfigError( "long-gibbs truth needs a number of steps." )
        if jobs < 1:
            raise ConfigError( "jobs must be at least 1." )
        self.model         = model
        self.algorithms    = tuple( algorithms )
        self.steps         = steps
        self.seeds         = tuple( seeds )
        self.out           = out
        self.snapshotEvery = snapshotEvery
        self.truth         = truth
        self.truthSteps    = truthSteps
        self.truthSeed     = truthSeed
        self.orbitStrategy = orbitStrategy
        self.hardWeight    = config.getHardWeight() if hardWeight is None else float( hardWeight )
        self.deterministic = deterministic
        self.jobs          = jobs

def klDivergence( truth, estimate, epsilon=KL_EPSILON ):
    """
    Returns the sum over variables of KL( truth || estimate ).
    Estimates are smoothed as ( p + epsilon ) / ( 1 + epsilon |D| ); values the truth gives probability 0 contribute nothing.
    """
    total = 0.0
    for t, e in zip( truth, estimate ):
        t = np.asarray( t, dtype=float )
        e = ( np.asarray( e, dtype=float ) + epsilon ) / ( 1.0 + epsilon * len( t ) )
        nz = t > 0
        total += float( np.sum( t[nz] * np.log( t[nz] / e[nz] ) ) )
    return max( total, 0.0 )

def truthMarginals( G, spec ):
    """Return the reference marginals of G for spec: exact, or from a long Gibbs chain."""
    if spec.truth == TRUTH_EXACT:
        return exactMarginals( G, hardWeight=spec.hardWeight )
    cfg = ChainConfig( ALGORITHM_GIBBS, spec.truthSteps, spec.truthSeed, hardWeight=spec.hardWeight )
    last = None
    for last in runChain( G, cfg, clock=None ):
        pass
    return last.marginals

def _prepare( G, algorithm ):
    """Return ( model the chain runs on, its symmetries, Binarization or None )."""
    if algorithm == ALGORITHM_BINARIZED_ORBITAL:
        B = binarize( G )
        return B.model, prepareSymmetries( B.model, ALGORITHM_ORBITAL ), B
    return G, prepareSymmetries( G, algorithm ), None

def _runOne( G, algorithm, seed, spec, prepared ):
    model, symmetries, B = prepared
    initial = None
    chainAlgorithm = algorithm
    if B is not None:
        initial = B.toBinary( ( 0, ) * G.n )
        chainAlgorithm = ALGORITHM_ORBITAL
    cfg = ChainConfig( chainAlgorithm, spec.steps, seed, spec.orbitStrategy, hardWeight=spec.hardWeight,
                       snapshotEvery=spec.snapshotEvery, initial=initial )
    clock = None if spec.deterministic else time.perf_counter
    snapshots = []
    for snap in runChain( model, cfg, symmetries, clock ):
        if B is not None:
            snap = Snapshot( snap.step, snap.wallMs, B.projectMarginals( snap.marginals ) )
        snapshots.append( snap )
    writeSnapshots( os.path.join( spec.out, "{}_seed{}.csv".format( algorithm, seed ) ), G.names, snapshots )
    logger.debug( "Finished %s with seed %r", algorithm, seed )
    return snapshots

def writeSnapshots( target, names, snapshots ):
    """Writes snapshots as CSV rows step,wall_ms,var,value,estimate to target (a path or writable text file-like object)."""
    def emit( f ):
        w = csv.writer( f, lineterminator="\n" )
        w.writerow( SNAPSHOT_HEADER )
        for snap in snapshots:
            for step, wall, name, x, p in snap.rows( names ):
                w.writerow( ( step, formatNumber( wall ), name, x, formatNumber( p ) ) )
    if isinstance( target, str ):
        with open( target, "w", newline="" ) as f:
            emit( f )
    else:
        emit( target )

def writeMarginals( target, names, marginals ):
    """Writes marginals as CSV rows var,value,probability to target (a path or writable text file-like object)."""
    def emit( f ):
        w = csv.writer( f, lineterminator="\n" )
        w.writerow( EXACT_HEADER )
        for name, m in zip( names, marginals ):
            for x, p in enumerate( m ):
                w.writerow( ( name, x, formatNumber( p ) ) )
    if isinstance( target, str ):
        with open( target, "w", newline="" ) as f:
            emit( f )
    else:
        emit( target )

def runExperiment( spec ):
    """
    Runs every ( algorithm, seed ) pair of spec, writes one snapshot CSV per run and kl.csv into spec.out,
    and returns the KL rows ( algo, seed, step, wall_ms, kl ) in the order they were written.
    With spec.jobs > 1 the runs are spread over a process pool.
    """
    G = spec.model
    os.makedirs( spec.out, exist_ok=True )
    truth = truthMarginals( G, spec )
    prepared = { a: _prepare( G, a ) for a in spec.algorithms }
    tasks = [ ( a, seed ) for a in spec.algorithms for seed in spec.seeds ]
    logger.info( "Running %d chains of %d steps", len( tasks ), spec.steps )

    if spec.jobs > 1:
        with ProcessPoolExecutor( max_workers=spec.jobs ) as pool:
            futures = [ pool.submit( _runOne, G, a, seed, spec, prepared[a] ) for a, seed in tasks ]
            results = [ f.result() for f in futures ]
    else:
        results = [ _runOne( G, a, seed, spec, prepared[a] ) for a, seed in tasks ]

    rows = []
    for ( a, seed ), snapshots in zip( tasks, results ):
        for snap in snapshots:
            rows.append( ( a, seed, snap.step, snap.wallMs, klDivergence( truth, snap.marginals ) ) )
    with open( os.path.join( spec.out, "kl.csv" ), "w", newline="" ) as f:
        w = csv.writer( f, lineterminator="\n" )
        w.writerow( KL_HEADER )
        for a, seed, step, wall, kl in rows:
            w.writerow( ( a, seed, step, formatNumber( wall ), formatNumber( kl ) ) )
    return rows

def stepsToThreshold( rows, algo, seed, threshold ):
    """Return the first snapshot step at which algo with the given seed reaches KL <= threshold, or None."""
    for a, s, step, _, kl in rows:
        if a == algo and s == seed and kl <= threshold:
            return step
    return None

def medianStepsToThreshold( rows, algo, threshold ):
    """Return the median over seeds of stepsToThreshold(); seeds that never reach the threshold count as infinity."""
    seeds = sorted( { s for a, s, _, _, _ in rows if a == algo } )
    if not seeds:
        return None
    steps = [ stepsToThreshold( rows, algo, s, threshold ) for s in seeds ]
    return statistics.median( math.inf if x is None else x for x in steps )
