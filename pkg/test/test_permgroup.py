import unittest

import numpy as np

import vvmc

from vvmc.permgroup import Permutation, GeneratorSet, PRASampler, compose, invert, identity, fromCycles, orbitOfPoint, orbitPartition, groupOrder, praNext, uniformOrbitElement

class TestPermutation( unittest.TestCase ):
    def test_compose( self ):
        q = Permutation( [ 2, 0, 1 ] )
        self.assertEqual( compose( identity( 3 ), q ), q )
        swap = Permutation( [ 1, 0 ] )
        self.assertTrue( compose( swap, swap ).isIdentity() )
        p = Permutation( [ 1, 2, 0 ] )
        self.assertEqual( p * p, ( 2, 0, 1 ) )
        with self.assertRaises( vvmc.SizeMismatch ):
            compose( swap, p )

    def test_invert( self ):
        self.assertEqual( invert( identity( 4 ) ), identity( 4 ) )
        self.assertEqual( invert( Permutation( [ 1, 0 ] ) ), ( 1, 0 ) )
        self.assertEqual( invert( Permutation( [ 1, 2, 0 ] ) ), ( 2, 0, 1 ) )

    def test_invalid( self ):
        with self.assertRaises( vvmc.InvalidPermutation ):
            Permutation( [ 0, 0, 1 ] )
        with self.assertRaises( vvmc.InvalidPermutation ):
            Permutation( [ 1, 2 ] )

    def test_cycles( self ):
        p = fromCycles( 5, [ ( 0, 1 ), ( 2, 3, 4 ) ] )
        self.assertEqual( p.cycles(), [ ( 0, 1 ), ( 2, 3, 4 ) ] )
        self.assertEqual( p.format(), "(0 1)(2 3 4)" )
        self.assertEqual( identity( 3 ).format(), "()" )
        self.assertEqual( p.support(), [ 0, 1, 2, 3, 4 ] )

class TestGroups( unittest.TestCase ):
    def test_orbitOfPoint( self ):
        self.assertEqual( orbitOfPoint( GeneratorSet( 6 ), 5 ), { 5 } )
        self.assertEqual( orbitOfPoint( GeneratorSet( 2, [ [ 1, 0 ] ] ), 0 ), { 0, 1 } )
        self.assertEqual( orbitOfPoint( GeneratorSet( 3, [ [ 1, 2, 0 ] ] ), 2 ), { 0, 1, 2 } )

    def test_orbitCap( self ):
        gens = GeneratorSet( 10, [ fromCycles( 10, [ tuple( range( 10 ) ) ] ) ] )
        with self.assertRaises( vvmc.OrbitCapExceeded ):
            orbitOfPoint( gens, 0, cap=5 )

    def test_orbitPartition( self ):
        gens = GeneratorSet( 5, [ fromCycles( 5, [ ( 0, 2 ) ] ), fromCycles( 5, [ ( 3, 4 ) ] ) ] )
        self.assertEqual( orbitPartition( gens ), [ ( 0, 2 ), ( 1, ), ( 3, 4 ) ] )

    def test_groupOrder( self ):
        s4 = GeneratorSet( 4, [ fromCycles( 4, [ ( 0, 1 ) ] ), fromCycles( 4, [ ( 0, 1, 2, 3 ) ] ) ] )
        self.assertEqual( groupOrder( s4 ), 24 )
        self.assertEqual( groupOrder( GeneratorSet( 4 ) ), 1 )

    def test_generatorSetDropsIdentity( self ):
        gens = GeneratorSet( 3, [ identity( 3 ), [ 1, 0, 2 ], [ 1, 0, 2 ] ] )
        self.assertEqual( len( gens ), 1 )

    def test_praTrivial( self ):
        sampler = PRASampler( GeneratorSet( 3 ), np.random.default_rng( 0 ) )
        for _ in range( 10 ):
            self.assertTrue( praNext( sampler ).isIdentity() )
        with self.assertRaises( vvmc.EmptyGroupError ):
            PRASampler( GeneratorSet( 0 ), np.random.default_rng( 0 ) )

    def test_praUniform( self ):
        sampler = PRASampler( GeneratorSet( 2, [ [ 1, 0 ] ] ), np.random.default_rng( 1 ) )
        swaps = sum( 1 for _ in range( 10000 ) if not praNext( sampler ).isIdentity() )
        self.assertAlmostEqual( swaps / 10000, 0.5, delta=0.05 )

    def test_praStaysInOrbit( self ):
        gens = GeneratorSet( 6, [ fromCycles( 6, [ ( 0, 1, 2 ) ] ), fromCycles( 6, [ ( 3, 4 ) ] ) ] )
        sampler = PRASampler( gens, np.random.default_rng( 2 ) )
        for _ in range( 500 ):
            g = praNext( sampler )
            self.assertIn( g[1], { 0, 1, 2 } )
            self.assertIn( g[4], { 3, 4 } )
            self.assertEqual( g[5], 5 )

    def test_uniformOrbitElement( self ):
        rng = np.random.default_rng( 3 )
        self.assertEqual( uniformOrbitElement( GeneratorSet( 4 ), 2, rng ), 2 )
        gens = GeneratorSet( 3, [ [ 1, 2, 0 ] ] )
        counts = np.bincount( [ uniformOrbitElement( gens, 0, rng ) for _ in range( 30000 ) ], minlength=3 ) / 30000
        for c in counts:
            self.assertAlmostEqual( c, 1 / 3, delta=0.02 )
        swap = GeneratorSet( 3, [ [ 1, 0, 2 ] ] )
        for _ in range( 100 ):
            self.assertIn( uniformOrbitElement( swap, 1, rng ), { 0, 1 } )

    def test_singletonOrbitUsesNoRandomness( self ):
        a, b = np.random.default_rng( 4 ), np.random.default_rng( 4 )
        uniformOrbitElement( GeneratorSet( 3, [ [ 1, 0, 2 ] ] ), 2, a )
        self.assertEqual( a.random(), b.random() )

if __name__ == "__main__":
    unittest.main()
