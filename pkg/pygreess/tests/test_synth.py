
import os
import tempfile
import unittest

import numpy as np

from pygreess.boolmat import BooleanMatrix, bool_product, contained, hamming_norm, load_matrix
from pygreess.synth import (
    DATA_STREAM, GENERATOR_NAME, NOISE_PRESET, NOISE_STREAM, PRESETS, SET_1, NoiseSpec, SynthSpec, add_noise,
    expected_density, format_metadata, gen_boolean_matrix, gen_dataset, gen_dataset_item, make_rng, parse_metadata,
    save_dataset)
from pygreess.exception import InvalidParameter, MatrixFormatError


class TestGenBooleanMatrix(unittest.TestCase):

    def test_density_bounds(self):
        self.assertEqual(gen_boolean_matrix(4, 5, 0.0, 1), BooleanMatrix.zeros(4, 5))
        self.assertEqual(gen_boolean_matrix(4, 5, 1.0, 1), BooleanMatrix.ones(4, 5))

    def test_reproducible(self):
        self.assertEqual(gen_boolean_matrix(30, 40, 0.3, 7), gen_boolean_matrix(30, 40, 0.3, 7))
        self.assertNotEqual(gen_boolean_matrix(30, 40, 0.3, 7), gen_boolean_matrix(30, 40, 0.3, 8))

    def test_mean_density(self):
        densities = [hamming_norm(gen_boolean_matrix(300, 20, 0.1, seed)) / 6000 for seed in range(200)]
        self.assertAlmostEqual(float(np.mean(densities)), 0.1, delta=0.005)

    def test_invalid(self):
        with self.assertRaises(InvalidParameter):
            gen_boolean_matrix(3, 3, 1.5, 0)
        with self.assertRaises(InvalidParameter):
            gen_boolean_matrix(-1, 3, 0.5, 0)

    def test_make_rng(self):
        a = make_rng(3, 1).random(4)
        b = make_rng(3, 1).random(4)
        c = make_rng(3, 2).random(4)
        self.assertTrue(np.array_equal(a, b))
        self.assertFalse(np.array_equal(a, c))
        self.assertIsInstance(make_rng(0).bit_generator, np.random.Philox)

    def test_make_rng_streams(self):
        data = make_rng(3, 1).random(8)
        noise = make_rng(3, 1, stream=NOISE_STREAM).random(8)
        self.assertFalse(np.array_equal(data, noise))
        self.assertTrue(np.array_equal(data, make_rng(3, 1, stream=DATA_STREAM).random(8)))


class TestSynthSpec(unittest.TestCase):

    def test_presets(self):
        self.assertEqual(len(PRESETS), 6)
        self.assertIs(PRESETS["Set1"], SET_1)
        self.assertIs(NOISE_PRESET, PRESETS["Set2"])
        self.assertEqual((SET_1.n_rows, SET_1.n_cols, SET_1.k_true, SET_1.dens_a, SET_1.dens_b),
                         (300, 100, 20, 0.10, 0.10))
        self.assertEqual(PRESETS["Set6"].n_rows, 10000)
        self.assertEqual(PRESETS["Set3"].dens_a, 0.10)
        self.assertEqual(PRESETS["Set3"].dens_b, 0.05)
        self.assertTrue(all(spec.count == 1000 for spec in PRESETS.values()))

    def test_replace(self):
        spec = SET_1.replace(count=5, seed=3)
        self.assertEqual(spec, SynthSpec(300, 100, 20, 0.1, 0.1, seed=3, count=5))
        self.assertEqual(SET_1.count, 1000)

    def test_invalid(self):
        with self.assertRaises(InvalidParameter):
            SynthSpec(10, 10, 2, 1.5, 0.1)
        with self.assertRaises(InvalidParameter):
            SynthSpec(10, 10, -1, 0.1, 0.1)
        with self.assertRaises(InvalidParameter):
            NoiseSpec("flip", 0.1)
        with self.assertRaises(InvalidParameter):
            NoiseSpec("general", -0.1)


class TestGenDataset(unittest.TestCase):

    def test_product(self):
        spec = SynthSpec(40, 30, 5, 0.2, 0.3, seed=1, count=5)
        datasets = gen_dataset(spec)
        self.assertEqual(len(datasets), 5)
        for i_matrix, a, b in datasets:
            self.assertEqual(i_matrix.shape, (40, 30))
            self.assertEqual(a.shape, (40, 5))
            self.assertEqual(b.shape, (5, 30))
            self.assertEqual(bool_product(a, b), i_matrix)

    def test_items(self):
        spec = SynthSpec(20, 10, 3, 0.3, 0.3, seed=2, count=4)
        datasets = gen_dataset(spec)
        for index in range(spec.count):
            self.assertEqual(gen_dataset_item(spec, index), datasets[index])
        self.assertEqual(gen_dataset(spec), datasets)
        self.assertNotEqual(datasets[0][0], datasets[1][0])

    def test_k_zero(self):
        i_matrix, a, b = gen_dataset_item(SynthSpec(5, 4, 0, 0.5, 0.5), 0)
        self.assertEqual(i_matrix, BooleanMatrix.zeros(5, 4))
        self.assertEqual(a.shape, (5, 0))
        self.assertEqual(b.shape, (0, 4))

    def test_expected_density(self):
        spec = SynthSpec(200, 100, 20, 0.1, 0.1, seed=4, count=20)
        self.assertAlmostEqual(expected_density(spec), 1 - 0.99 ** 20)
        densities = [hamming_norm(i_matrix) / 20000 for i_matrix, _, _ in gen_dataset(spec)]
        self.assertAlmostEqual(float(np.mean(densities)), expected_density(spec), delta=0.02)


class TestNoise(unittest.TestCase):

    def setUp(self):
        self.m = gen_boolean_matrix(50, 40, 0.3, 11)

    def test_zero_noise(self):
        for kind in ("additive", "subtractive", "general"):
            self.assertEqual(add_noise(self.m, NoiseSpec(kind, 0.0)), self.m)

    def test_additive(self):
        noisy = add_noise(self.m, NoiseSpec("additive", 0.2, seed=1))
        self.assertTrue(contained(self.m, noisy))
        self.assertGreater(hamming_norm(noisy), hamming_norm(self.m))
        self.assertEqual(add_noise(self.m, NoiseSpec("additive", 1.0)), BooleanMatrix.ones(50, 40))

    def test_subtractive(self):
        noisy = add_noise(self.m, NoiseSpec("subtractive", 0.2, seed=1))
        self.assertTrue(contained(noisy, self.m))
        self.assertLess(hamming_norm(noisy), hamming_norm(self.m))
        self.assertEqual(add_noise(self.m, NoiseSpec("subtractive", 1.0)), BooleanMatrix.zeros(50, 40))

    def test_general(self):
        flipped = add_noise(self.m, NoiseSpec("general", 1.0))
        self.assertTrue(np.array_equal(flipped.to_array(), ~self.m.to_array()))
        noisy = add_noise(self.m, NoiseSpec("general", 0.1, seed=2))
        changed = int(np.count_nonzero(noisy.to_array() != self.m.to_array()))
        self.assertAlmostEqual(changed / 2000, 0.1, delta=0.03)

    def test_reproducible(self):
        spec = NoiseSpec("general", 0.1, seed=5)
        self.assertEqual(add_noise(self.m, spec), add_noise(self.m, spec))
        self.assertEqual(add_noise(self.m, spec, index=3), add_noise(self.m, spec, index=3))
        self.assertNotEqual(add_noise(self.m, spec, index=3), add_noise(self.m, spec, index=4))

    def test_mask_independent_of_planted_factors(self):
        clean, a_true, _ = gen_dataset_item(NOISE_PRESET, 0)
        noisy = add_noise(clean, NoiseSpec("general", NOISE_PRESET.dens_a, seed=NOISE_PRESET.seed), index=0)
        mask = (noisy.to_array() ^ clean.to_array()).ravel()
        planted = a_true.to_array().ravel()
        head = mask[:planted.size]
        self.assertFalse(np.array_equal(head, planted))
        # Flips hit the cells of A's 1s at the noise rate only.
        self.assertLess(head[planted].mean(), 0.15)

    def test_mask_independent_of_generated_matrix(self):
        zeros = BooleanMatrix.zeros(50, 40)
        for seed in range(5):
            noisy = add_noise(zeros, NoiseSpec("additive", 0.3, seed=seed))
            self.assertNotEqual(noisy, gen_boolean_matrix(50, 40, 0.3, seed))


class TestMetadata(unittest.TestCase):

    def test_format(self):
        text = format_metadata(SynthSpec(10, 5, 2, 0.1, 0.2, seed=3, count=4), NoiseSpec("additive", 0.05, seed=1))
        meta = parse_metadata(text)
        self.assertEqual(meta["n_rows"], "10")
        self.assertEqual(meta["dens_b"], "0.2")
        self.assertEqual(meta["count"], "4")
        self.assertEqual(meta["generator"], GENERATOR_NAME)
        self.assertEqual(meta["noise_kind"], "additive")
        self.assertEqual(meta["noise_p"], "0.05")

    def test_parse_invalid(self):
        with self.assertRaises(MatrixFormatError):
            parse_metadata("n_rows=10\ncount\n")

    def test_save_dataset(self):
        spec = SynthSpec(8, 6, 2, 0.3, 0.3, seed=9, count=3)
        with tempfile.TemporaryDirectory() as dspec:
            paths = save_dataset(spec, dspec, fmt="sparse", with_factors=True)
            self.assertEqual([os.path.basename(p) for p in paths], ["i_0000.sparse", "i_0001.sparse", "i_0002.sparse"])
            self.assertEqual(len(os.listdir(dspec)), 10)
            for index, fspec in enumerate(paths):
                i_matrix, a, _ = gen_dataset_item(spec, index)
                self.assertEqual(load_matrix(fspec, "sparse"), i_matrix)
                self.assertEqual(load_matrix(os.path.join(dspec, "a_{:04d}.sparse".format(index)), "sparse"), a)
            with open(os.path.join(dspec, "metadata.txt")) as f:
                meta = parse_metadata(f.read())
            self.assertEqual(meta["seed"], "9")
