import math
import unittest

import numpy as np

import vvmc

from vvmc.permgroup import GeneratorSet, groupOrder
from vvmc.autograph import vvSymmetries, variableSymmetries
from vvmc.symmetry  import isVvSymmetry, embedVariableSymmetry, stateOrbits
from vvmc.reduction import valueSwapClasses, necSymmetries, kRatio, applyNec
from vvmc.model     import exactDistribution, exactMarginals
from vvmc.domains   import (
    toyG1, toyG2, toyG3Nec, toyXor, RingSpec, genRing, CurriculumSpec, genCurriculum, binarize, DEFAULT_FAIL_WEIGHTS
)

LN2 = math.log( 2 )

def vvOrder( G ):
    return groupOrder( GeneratorSet( G.vvCount(), [ g.perm for g in vvSymmetries( G ) ] ) )

class TestToys( unittest.TestCase ):
    def test_shapes( self ):
        for G, cards, m, kind in (
            ( toyG1(),    ( 2, 2 ), 2, vvmc.MODE_CLAUSAL ),
            ( toyG2(),    ( 2, 2 ), 4, vvmc.MODE_CONJUNCTIVE ),
            ( toyG3Nec(), ( 2, 3 ), 2, vvmc.MODE_CLAUSAL ),
            ( toyXor(),   ( 2, 2 ), 2, vvmc.MODE_CONJUNCTIVE )
        ):
            self.assertEqual( G.cardinalities, cards )
            self.assertEqual( G.m, m )
            self.assertEqual( G.kind, kind )

    def test_g1Weights( self ):
        G = toyG1()
        self.assertAlmostEqual( G.features[0].weight, LN2 )
        self.assertAlmostEqual( G.features[1].weight, math.log( 3 ) )

class TestSymmetrySoundness( unittest.TestCase ):
    """Every detected symmetry must preserve the probability of every state."""
    models = (
        ( "g1",         lambda: toyG1() ),
        ( "g2",         lambda: toyG2( 1.0, 2.0 ) ),
        ( "g3",         lambda: toyG3Nec() ),
        ( "xor",        lambda: toyXor() ),
        ( "ring4",      lambda: genRing( RingSpec( 4, 1.0, 2.0 ) ) ),
        ( "ring8",      lambda: genRing( RingSpec( 8, LN2, math.log( 3 ), renameProb=0.3, seed=1 ) ) ),
        ( "curriculum", lambda: genCurriculum( CurriculumSpec( 2, [ 2, 3 ], failWeights=[ 0.5, 0.5 ] ) ) )
    )

    def assertPreserves( self, dist, image ):
        for s, p in dist.items():
            self.assertAlmostEqual( dist[image( s )], p, places=12 )

    def test_vv( self ):
        for name, build in self.models:
            G = build()
            dist = exactDistribution( G )
            for g in vvSymmetries( G ):
                with self.subTest( model=name, symmetry=g.format( G.names ) ):
                    self.assertTrue( isVvSymmetry( g, G ) )
                    self.assertPreserves( dist, g.apply )

    def test_variable( self ):
        for name, build in self.models:
            G = build()
            dist = exactDistribution( G )
            for theta in variableSymmetries( G ):
                g = embedVariableSymmetry( theta, G )
                with self.subTest( model=name ):
                    self.assertTrue( isVvSymmetry( g, G ) )
                    self.assertPreserves( dist, g.apply )

    def test_nec( self ):
        for name, build in self.models:
            G = build()
            dist = exactDistribution( G )
            R, taus = necSymmetries( G )
            for tau in taus:
                with self.subTest( model=name, symmetry=tau.format() ):
                    self.assertPreserves( dist, lambda s: applyNec( tau, s ) )

class TestRing( unittest.TestCase ):
    def test_spec( self ):
        for args in ( ( 3, 1.0, 1.0 ), ( 5, 1.0, 1.0 ), ( 2, 1.0, 1.0 ) ):
            with self.assertRaises( vvmc.ConfigError ):
                RingSpec( *args )
        with self.assertRaises( vvmc.ConfigError ):
            RingSpec( 4, 1.0, 1.0, renameProb=1.5 )
        with self.assertRaises( vvmc.ConfigError ):
            RingSpec( 4, 1.0, 1.0, weights=[ 1.0, 2.0 ] )

    def test_features( self ):
        G = genRing( RingSpec( 4, 0.5, 1.5 ) )
        self.assertEqual( G.names, ( "X1", "X2", "X3", "X4" ) )
        self.assertEqual( G.m, 4 )
        for i, f in enumerate( G.features ):
            self.assertEqual( f.literals, ( ( i, 1, False ), ( ( i + 1 ) % 4, 1, True ) ) if i < 3 else ( ( 0, 1, True ), ( 3, 1, False ) ) )
            self.assertEqual( f.weight, 0.5 if i % 2 == 0 else 1.5 )

    def test_explicitWeights( self ):
        G = genRing( RingSpec( 4, 0.0, 0.0, weights=[ 1, 2, 3, 4 ] ) )
        self.assertEqual( [ f.weight for f in G.features ], [ 1.0, 2.0, 3.0, 4.0 ] )

    def test_deterministic( self ):
        a = genRing( RingSpec( 8, 1.0, 2.0, renameProb=0.5, seed=3 ) )
        b = genRing( RingSpec( 8, 1.0, 2.0, renameProb=0.5, seed=3 ) )
        self.assertEqual( vvmc.dumps( a ), vvmc.dumps( b ) )

    def test_renameAll( self ):
        G = genRing( RingSpec( 4, 1.0, 1.0, renameProb=1.0 ) )
        for f in G.features:
            self.assertTrue( all( x == 0 for _, x, _ in f.literals ) )

    def test_rotations( self ):
        self.assertEqual( groupOrder( variableSymmetries( genRing( RingSpec( 4, 1.0, 1.0 ) ) ) ), 4 )
        self.assertEqual( groupOrder( variableSymmetries( genRing( RingSpec( 4, 1.0, 2.0 ) ) ) ), 2 )
        self.assertEqual( groupOrder( variableSymmetries( genRing( RingSpec( 8, 1.0, 2.0 ) ) ) ), 4 )

    def test_renamingInvariance( self ):
        #Renaming values is an isomorphism on VV pairs, so it can't change the VV group
        for N in ( 4, 8, 16 ):
            base = vvOrder( genRing( RingSpec( N, 1.0, 2.0 ) ) )
            for seed in range( 10 ):
                with self.subTest( N=N, seed=seed ):
                    self.assertEqual( vvOrder( genRing( RingSpec( N, 1.0, 2.0, renameProb=0.5, seed=seed ) ) ), base )

    def test_vvBeatsVariable( self ):
        #Reflections that also flip every value are VV symmetries but not variable symmetries
        G = genRing( RingSpec( 4, 1.0, 1.0 ) )
        self.assertEqual( vvOrder( G ), 8 )

class TestCurriculum( unittest.TestCase ):
    def setUp( self ):
        self.G = genCurriculum( CurriculumSpec( 1, [ 2, 3 ], failWeights=[ 0.5 ] ) )

    def test_spec( self ):
        with self.assertRaises( vvmc.ConfigError ):
            CurriculumSpec( 0, [ 2, 3 ] )
        with self.assertRaises( vvmc.ConfigError ):
            CurriculumSpec( 1, [ 2 ] )
        with self.assertRaises( vvmc.ConfigError ):
            CurriculumSpec( 1, [ 2, 0 ] )
        with self.assertRaises( vvmc.ConfigError ):
            CurriculumSpec( 2, [ 2, 3 ], failWeights=[ 1.0 ] )
        spec = CurriculumSpec( 5, [ 2, 3 ], seed=9 )
        self.assertEqual( len( spec.failWeights ), 5 )
        self.assertTrue( all( w in DEFAULT_FAIL_WEIGHTS for w in spec.failWeights ) )
        self.assertEqual( spec.failWeights, CurriculumSpec( 5, [ 2, 3 ], seed=9 ).failWeights )

    def test_variables( self ):
        self.assertEqual( self.G.names, ( "P_1_1", "P_1_2", "C_1_1_2" ) )
        self.assertEqual( self.G.cardinalities, ( 3, 4, 2 ) )
        self.assertEqual( self.G.m, 6 )
        self.assertEqual( sum( f.isHard() for f in self.G.features ), 3 )

    def test_completion( self ):
        #C holds exactly when both areas were passed
        dist = exactDistribution( self.G )
        for s, p in dist.items():
            if p > 0:
                self.assertEqual( s[2], int( s[0] != 0 and s[1] != 0 ) )

    def test_classes( self ):
        classes = valueSwapClasses( self.G )
        self.assertEqual( classes.classes, ( ( ( 0, ), ( 1, 2 ) ), ( ( 0, ), ( 1, 2, 3 ) ), ( ( 0, ), ( 1, ) ) ) )

    def test_areasInterchangeable( self ):
        #No variable symmetry maps areas of different sizes onto each other, but after reduction they are interchangeable
        self.assertTrue( variableSymmetries( self.G ).isTrivial() )
        R, taus = necSymmetries( self.G )
        self.assertEqual( R.model.cardinalities, ( 2, 2, 2 ) )
        self.assertEqual( len( taus ), 1 )
        self.assertIn( ( ( 0, 1, 0 ), ( 1, 0, 0 ) ), stateOrbits( R.model, [ t.reducedVv for t in taus ] ) )
        self.assertGreater( kRatio( self.G, R ), 0.0 )

    def test_twoStudents( self ):
        G = genCurriculum( CurriculumSpec( 2, [ 1, 2 ], failWeights=[ 1.0, 1.0 ] ) )
        self.assertEqual( G.n, 6 )
        self.assertEqual( G.names[3:], ( "P_2_1", "P_2_2", "C_2_1_2" ) )

class TestBinarize( unittest.TestCase ):
    def setUp( self ):
        self.G = toyG3Nec( LN2 )
        self.B = binarize( self.G )

    def test_structure( self ):
        M = self.B.model
        self.assertEqual( M.names, ( "a", "b_0", "b_1", "b_2" ) )
        self.assertTrue( M.isBoolean() )
        self.assertEqual( self.B.slots, ( ( 0, ), ( 1, 2, 3 ) ) )
        #One at-least-one clause, three at-most-one clauses and the two original features
        self.assertEqual( M.m, 6 )
        self.assertEqual( sum( f.isHard() for f in M.features ), 4 )
        self.assertEqual( M.features[-1].literals, ( ( 2, 1, True ), ( 3, 1, True ) ) )

    def test_states( self ):
        self.assertEqual( self.B.toBinary( ( 1, 2 ) ), ( 1, 0, 0, 1 ) )
        self.assertEqual( self.B.toOriginal( ( 1, 0, 0, 1 ) ), ( 1, 2 ) )
        self.assertEqual( self.B.toOriginal( ( 0, 0, 0, 0 ) ), ( 0, 0 ) )

    def test_exactMarginals( self ):
        for p, q in zip( self.B.projectMarginals( exactMarginals( self.B.model ) ), exactMarginals( self.G ) ):
            np.testing.assert_allclose( p, q, atol=1e-12 )

    def test_projectMarginals( self ):
        marginals = [ np.array( [ 0.4, 0.6 ] ), np.array( [ 0.5, 0.5 ] ), np.array( [ 0.75, 0.25 ] ), np.array( [ 0.75, 0.25 ] ) ]
        out = self.B.projectMarginals( marginals )
        np.testing.assert_allclose( out[0], [ 0.4, 0.6 ] )
        np.testing.assert_allclose( out[1], [ 0.5, 0.25, 0.25 ] )

    def test_singleValueVariable( self ):
        G = vvmc.GraphicalModel( [ ( "a", 1 ), ( "b", 3 ) ], [ vvmc.Feature( [ ( 0, 0, True ), ( 1, 1, True ) ], 0.5 ), vvmc.Feature( [ ( 1, 2, True ) ], 1.0 ) ] )
        B = binarize( G )
        self.assertEqual( B.model.cardinalities, ( 1, 2, 2, 2 ) )
        self.assertEqual( B.toBinary( ( 0, 1 ) ), ( 0, 0, 1, 0 ) )
        for p, q in zip( B.projectMarginals( exactMarginals( B.model ) ), exactMarginals( G ) ):
            np.testing.assert_allclose( p, q, atol=1e-12 )

    def test_conjunctive( self ):
        with self.assertRaises( vvmc.ConfigError ):
            binarize( toyXor() )

    def test_binarySymmetries( self ):
        #b_1 and b_2 become interchangeable Boolean variables
        gens = variableSymmetries( self.B.model )
        self.assertEqual( groupOrder( gens ), 2 )

if __name__ == "__main__":
    unittest.main()
