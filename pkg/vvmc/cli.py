"""
Command line interface: vvmc <command> [options].

Commands:
    symmetries  print the variable, VV or NEC symmetries of a model
    reduce      write the reduced model and its value classes
    sample      run one chain and write its marginal snapshots
    run         run a KL experiment over several algorithms and seeds
    exact       write the exact marginals of a model
    gen         write a benchmark or example model
    binarize    write the binarized form of a clausal model

Exit codes: 0 on success, 2 for invalid input, 3 when a resource cap is exceeded.
"""
import sys
import math
import time
import logging
import argparse

from vvmc           import config, VERSION
from vvmc.shared    import VVMCError, OrbitCapExceeded, RenamingSpaceTooLarge, exitCode, EXIT_OK, EXIT_VALIDATION
from vvmc.parse     import read
from vvmc.writer    import write, dumps
from vvmc.model     import exactMarginals
from vvmc.permgroup import GeneratorSet, groupOrder
from vvmc.symmetry  import classifyTaxonomy, LABEL_COUNT
from vvmc.autograph import variableSymmetries, vvSymmetries, buildVariableGraph, buildVvGraph
from vvmc.reduction import necSymmetries, valueSwapClasses, reduceModel, kRatio
from vvmc.samplers  import ChainConfig, runChain, ALGORITHMS, STRATEGIES, STRATEGY_AUTO
from vvmc.domains   import toyG1, toyG2, toyG3Nec, toyXor, RingSpec, genRing, CurriculumSpec, genCurriculum, binarize
from vvmc.experiment import (
    ExperimentSpec, runExperiment, writeSnapshots, writeMarginals, medianStepsToThreshold,
    EXPERIMENT_ALGORITHMS, TRUTH_EXACT, TRUTH_LONG_GIBBS
)

logger = logging.getLogger( __name__ )

#Largest group whose order is computed by closing its generators
ORDER_CAP = 100000

DOMAINS = ( "ring", "curriculum", "g1", "g2", "g3", "xor" )

def _csvList( cast ):
    def convert( text ):
        try:
            return [ cast( x ) for x in text.split( "," ) if x.strip() ]
        except ValueError:
            raise argparse.ArgumentTypeError( "expected a comma-separated list, not {!r}".format( text ) )
    return convert

def _order( groundSize, perms ):
    try:
        return str( groupOrder( GeneratorSet( groundSize, perms ), ORDER_CAP ) )
    except OrbitCapExceeded:
        return "> {:d}".format( ORDER_CAP )

def cmdSymmetries( args, fn=print ):
    G = read( args.model )
    names = G.names
    start = time.perf_counter()
    if args.kind == "variable":
        if args.dump_graph:
            fn( ( buildVariableGraph( G ) if G.isBoolean() else buildVvGraph( G, valueColors=True ) ).dumps(), end="" )
        gens = variableSymmetries( G )
        fn( "generators {:d}".format( len( gens ) ) )
        for g in gens:
            fn( "  " + g.format( lambda i: names[i] ) )
        fn( "order {}".format( _order( G.n, gens.generators ) ) )
        fn( "taxonomy {}".format( LABEL_COUNT ) )
    elif args.kind == "vv":
        if args.dump_graph:
            fn( buildVvGraph( G ).dumps(), end="" )
        gens = vvSymmetries( G )
        fn( "generators {:d}".format( len( gens ) ) )
        for g in gens:
            fn( "  " + g.format( names ) )
        fn( "order {}".format( _order( G.vvCount(), [ g.perm for g in gens ] ) ) )
        try:
            t = classifyTaxonomy( G, gens, groupCap=ORDER_CAP )
            fn( "taxonomy {}{}".format( t.label, " ({})".format( t.witnessText ) if t.witnessText else "" ) )
        except ( RenamingSpaceTooLarge, OrbitCapExceeded ) as e:
            fn( "taxonomy unknown ({})".format( e ) )
    else:
        R, taus = necSymmetries( G )
        fn( R.classes.format( names ) )
        fn( "generators {:d}".format( len( taus ) ) )
        for t in taus:
            fn( "  " + t.format() )
        fn( "order {}".format( _order( R.model.vvCount(), [ t.reducedVv.perm for t in taus ] ) ) )
        if R.classes.isTrivial():
            fn( "taxonomy none (no value swap symmetries; see --kind vv)" )
        else:
            fn( "taxonomy {}".format( classifyTaxonomy( R.model, [ t.reducedVv for t in taus ], nec=True ).label ) )
    fn( "time_ms {:.3f}".format( ( time.perf_counter() - start ) * 1000.0 ) )
    return EXIT_OK

def cmdReduce( args, fn=print ):
    G = read( args.model )
    classes = valueSwapClasses( G )
    R = reduceModel( G, classes )
    if args.check_ratio:
        logger.info( "k = %r", kRatio( G, R ) )
    if args.out:
        write( R.model, args.out )
        with open( args.out + ".classes", "w", newline="\n" ) as f:
            f.write( classes.format( G.names ) + "\n" )
    else:
        fn( dumps( R.model ), end="" )
        fn( classes.format( G.names ) )
    return EXIT_OK

def cmdSample( args, fn=print ):
    G = read( args.model )
    cfg = ChainConfig( args.algorithm, args.steps, args.seed, args.orbit_strategy, args.burn_in, args.hard_weight, args.snapshot_every )
    snapshots = list( runChain( G, cfg, clock=None if args.deterministic else time.perf_counter ) )
    writeSnapshots( args.out if args.out else sys.stdout, G.names, snapshots )
    return EXIT_OK

def cmdRun( args, fn=print ):
    spec = ExperimentSpec(
        args.model, args.algorithms, args.steps, args.seeds, args.out,
        snapshotEvery=args.snapshot_every, truth=args.truth, truthSteps=args.truth_steps, truthSeed=args.truth_seed,
        orbitStrategy=args.orbit_strategy, hardWeight=args.hard_weight, deterministic=args.deterministic, jobs=args.jobs
    )
    rows = runExperiment( spec )
    if args.threshold is not None:
        for a in spec.algorithms:
            m = medianStepsToThreshold( rows, a, args.threshold )
            fn( "{} median steps to KL <= {:g}: {}".format( a, args.threshold, "never" if m == math.inf else m ) )
    return EXIT_OK

def cmdExact( args, fn=print ):
    G = read( args.model )
    marginals = exactMarginals( G, hardWeight=args.hard_weight )
    writeMarginals( args.out if args.out else sys.stdout, G.names, marginals )
    return EXIT_OK

def generate( args ):
    """Return the model described by the gen command's arguments."""
    def weight( value, default ):
        return default if value is None else value
    if args.domain == "ring":
        return genRing( RingSpec( args.n, weight( args.w1, math.log( 2 ) ), weight( args.w2, math.log( 3 ) ), args.rename_prob, args.seed, args.weights ) )
    if args.domain == "curriculum":
        return genCurriculum( CurriculumSpec( args.students, args.areas, args.fail_weights, weight( args.completion_weight, 1.0 ), args.seed ) )
    if args.domain == "g1":
        return toyG1( weight( args.w1, math.log( 2 ) ), weight( args.w2, math.log( 3 ) ) )
    if args.domain == "g2":
        return toyG2( weight( args.w1, 1.0 ), weight( args.w2, 1.0 ) )
    if args.domain == "g3":
        return toyG3Nec( weight( args.w1, math.log( 2 ) ) )
    return toyXor( weight( args.w1, 1.0 ) )

def cmdGen( args, fn=print ):
    G = generate( args )
    if args.out:
        write( G, args.out )
    else:
        fn( dumps( G ), end="" )
    return EXIT_OK

def cmdBinarize( args, fn=print ):
    B = binarize( read( args.model ) )
    if args.out:
        write( B.model, args.out )
    else:
        fn( dumps( B.model ), end="" )
    return EXIT_OK

def buildParser():
    parser = argparse.ArgumentParser( prog="vvmc", description="Variable-value symmetries and orbital MCMC for discrete graphical models." )
    parser.add_argument( "--version", action="version", version="%(prog)s " + VERSION )
    parser.add_argument( "-v", "--verbose", action="count", default=0, help="log more (repeat for debug output)" )
    parser.add_argument( "--state-cap", type=int, help="largest state space enumerated exactly" )
    parser.add_argument( "--orbit-cap", type=int, help="largest orbit enumerated by breadth-first search" )
    parser.add_argument( "--search-budget", type=int, help="most nodes the automorphism search may visit" )
    sub = parser.add_subparsers( dest="command", metavar="command" )
    sub.required = True

    p = sub.add_parser( "symmetries", help="print the symmetries of a model" )
    p.add_argument( "model" )
    p.add_argument( "--kind", choices=( "variable", "vv", "nec" ), default="vv" )
    p.add_argument( "--dump-graph", action="store_true", help="print the colored graph before the generators" )
    p.set_defaults( func=cmdSymmetries )

    p = sub.add_parser( "reduce", help="write the reduced model and its value classes" )
    p.add_argument( "model" )
    p.add_argument( "--out", help="model file to write; the classes go to <out>.classes" )
    p.add_argument( "--check-ratio", action="store_true", help="check that the reduced model is proportional to the original" )
    p.set_defaults( func=cmdReduce )

    p = sub.add_parser( "sample", help="run one chain and write its marginal snapshots" )
    p.add_argument( "model" )
    p.add_argument( "--algorithm", choices=ALGORITHMS, default=ALGORITHMS[0] )
    p.add_argument( "--steps", type=int, required=True )
    p.add_argument( "--seed", type=int, default=0 )
    p.add_argument( "--burn-in", type=int, default=0 )
    p.add_argument( "--snapshot-every", type=int )
    p.add_argument( "--orbit-strategy", choices=STRATEGIES, default=STRATEGY_AUTO )
    p.add_argument( "--hard-weight", type=float )
    p.add_argument( "--deterministic", action="store_true", help="write wall_ms as 0" )
    p.add_argument( "--out" )
    p.set_defaults( func=cmdSample )

    p = sub.add_parser( "run", help="run a KL experiment" )
    p.add_argument( "model" )
    p.add_argument( "--algorithms", type=_csvList( str ), default=list( EXPERIMENT_ALGORITHMS[:3] ) )
    p.add_argument( "--seeds", type=_csvList( int ), default=[ 0 ] )
    p.add_argument( "--steps", type=int, required=True )
    p.add_argument( "--snapshot-every", type=int )
    p.add_argument( "--truth", choices=( TRUTH_EXACT, TRUTH_LONG_GIBBS ), default=TRUTH_EXACT )
    p.add_argument( "--truth-steps", type=int )
    p.add_argument( "--truth-seed", type=int, default=0 )
    p.add_argument( "--orbit-strategy", choices=STRATEGIES, default=STRATEGY_AUTO )
    p.add_argument( "--hard-weight", type=float )
    p.add_argument( "--threshold", type=float, help="also print each algorithm's median steps to reach this KL" )
    p.add_argument( "--jobs", type=int, default=1 )
    p.add_argument( "--deterministic", action="store_true", help="write wall_ms as 0" )
    p.add_argument( "--out", required=True, help="output directory" )
    p.set_defaults( func=cmdRun )

    p = sub.add_parser( "exact", help="write exact marginals" )
    p.add_argument( "model" )
    p.add_argument( "--hard-weight", type=float, help="treat HARD features as soft with this weight" )
    p.add_argument( "--out" )
    p.set_defaults( func=cmdExact )

    p = sub.add_parser( "gen", help="write a benchmark or example model" )
    p.add_argument( "domain", choices=DOMAINS )
    p.add_argument( "--n", type=int, default=16, help="ring: number of people" )
    p.add_argument( "--w1", type=float, help="ring: male weight; g1: w1; g2: ws; g3, xor: w" )
    p.add_argument( "--w2", type=float, help="ring: female weight; g1: w2; g2: wd" )
    p.add_argument( "--weights", type=_csvList( float ), help="ring: one weight per clause" )
    p.add_argument( "--rename-prob", type=float, default=0.0 )
    p.add_argument( "--students", type=int, default=4 )
    p.add_argument( "--areas", type=_csvList( int ), default=[ 2, 3, 4 ] )
    p.add_argument( "--fail-weights", type=_csvList( float ) )
    p.add_argument( "--completion-weight", type=float )
    p.add_argument( "--seed", type=int, default=0 )
    p.add_argument( "--out" )
    p.set_defaults( func=cmdGen )

    p = sub.add_parser( "binarize", help="write the binarized form of a clausal model" )
    p.add_argument( "model" )
    p.add_argument( "--out" )
    p.set_defaults( func=cmdBinarize )
    return parser

def main( argv=None ):
    args = buildParser().parse_args( argv )
    logging.basicConfig( level=max( logging.DEBUG, logging.WARNING - 10 * args.verbose ), format="%(levelname)s %(name)s: %(message)s" )
    try:
        if args.state_cap is not None:
            config.setStateCap( args.state_cap )
        if args.orbit_cap is not None:
            config.setOrbitCap( args.orbit_cap )
        if args.search_budget is not None:
            config.setSearchBudget( args.search_budget )
        return args.func( args )
    except VVMCError as e:
        print( "error: {}".format( e ), file=sys.stderr )
        return exitCode( e )
    except OSError as e:
        #Unreadable model files and unwritable outputs
        print( "error: {}".format( e ), file=sys.stderr )
        return EXIT_VALIDATION
