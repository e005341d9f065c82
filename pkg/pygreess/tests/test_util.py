
import os
import stat
import tempfile
import unittest
from unittest import mock

from bitarray import frozenbitarray

from pygreess import util
from pygreess.exception import InvalidIndex, InvalidParameter


class TestBits(unittest.TestCase):

    def test_conversions(self):
        bits = util.bits_from_indices([0, 3, 5], 6)
        self.assertIsInstance(bits, frozenbitarray)
        self.assertEqual(bits, frozenbitarray("100101"))
        self.assertEqual(util.indices_from_bits(bits), [0, 3, 5])
        self.assertEqual(util.set_from_bits(bits), frozenset({0, 3, 5}))
        self.assertEqual(util.indices_from_bits(util.empty_bits(4)), [])

    def test_range(self):
        with self.assertRaises(InvalidIndex):
            util.bits_from_indices([4], 4)
        with self.assertRaises(InvalidIndex):
            util.bits_from_indices([-1], 4)

    def test_empty_full(self):
        self.assertEqual(util.empty_bits(3), frozenbitarray("000"))
        self.assertEqual(util.full_bits(100).count(), 100)
        self.assertEqual(len(util.full_bits(0)), 0)

    def test_is_subset(self):
        self.assertTrue(util.is_subset(frozenbitarray("100"), frozenbitarray("110")))
        self.assertTrue(util.is_subset(util.empty_bits(3), util.empty_bits(3)))
        self.assertFalse(util.is_subset(frozenbitarray("001"), frozenbitarray("110")))


class TestEnvironment(unittest.TestCase):

    def test_defaults(self):
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(util.get_rank_max_concepts(), 20)
            self.assertEqual(util.get_max_concepts(), 100000)
            self.assertFalse(util.slow_tests_enabled())

    def test_override(self):
        env = {"PYGREESS_RANK_MAX_CONCEPTS": "64", "PYGREESS_SLOW_TESTS": "1"}
        with mock.patch.dict(os.environ, env, clear=True):
            self.assertEqual(util.get_rank_max_concepts(), 64)
            self.assertTrue(util.slow_tests_enabled())

    def test_invalid(self):
        with mock.patch.dict(os.environ, {"PYGREESS_MAX_CONCEPTS": "many"}, clear=True):
            with self.assertRaises(InvalidParameter):
                util.get_max_concepts()
        with mock.patch.dict(os.environ, {"PYGREESS_MAX_CONCEPTS": "-5"}, clear=True):
            with self.assertRaises(InvalidParameter):
                util.get_max_concepts()


class TestAtomicWrite(unittest.TestCase):

    def test_write(self):
        with tempfile.TemporaryDirectory() as dspec:
            fspec = os.path.join(dspec, "out.txt")
            with util.atomic_write(fspec) as f:
                f.write("abc\n")
            with open(fspec) as f:
                self.assertEqual(f.read(), "abc\n")
            self.assertEqual(os.listdir(dspec), ["out.txt"])

    def test_failure(self):
        with tempfile.TemporaryDirectory() as dspec:
            fspec = os.path.join(dspec, "out.txt")
            with self.assertRaises(RuntimeError):
                with util.atomic_write(fspec) as f:
                    f.write("partial")
                    raise RuntimeError("boom")
            self.assertEqual(os.listdir(dspec), [])

    def test_file_mode(self):
        umask = os.umask(0o022)
        try:
            with tempfile.TemporaryDirectory() as dspec:
                fspec = os.path.join(dspec, "out.txt")
                with util.atomic_write(fspec) as f:
                    f.write("abc\n")
                self.assertEqual(stat.S_IMODE(os.stat(fspec).st_mode), 0o644)
        finally:
            os.umask(umask)

    def test_file_mode_follows_umask(self):
        umask = os.umask(0o077)
        try:
            with tempfile.TemporaryDirectory() as dspec:
                fspec = os.path.join(dspec, "out.txt")
                with util.atomic_write(fspec) as f:
                    f.write("abc\n")
                self.assertEqual(stat.S_IMODE(os.stat(fspec).st_mode), 0o600)
        finally:
            os.umask(umask)
