import unittest, doctest

import numpy

from sepy import snrSweep as sweepModule
from sepy.snrSweep import snrSweep, pearson
from sepy.generators import SnrTaskSet, buildSNRTaskSet
from sepy.classifiers import ClassifierSpec, train, predict
from sepy.separability import rsMeasure
from sepy.labeledMatrix import LabeledMatrix
from sepy.errors import ZeroVariance, InvalidRange

IRIS_MEANS = numpy.array([[5.0, 3.4, 1.5, 0.2], [5.9, 2.8, 4.3, 1.3],
                          [6.6, 3.0, 5.6, 2.0]])

def irisLike(n, seed) :
  rng = numpy.random.default_rng(seed)
  x = numpy.concatenate([rng.normal(m, 0.3, (n, 4)) for m in IRIS_MEANS])
  return LabeledMatrix.fromSamples(x, numpy.repeat([0, 1, 2], n))

SPECS = [ClassifierSpec("knn"), ClassifierSpec("logreg"), ClassifierSpec("linearsvm")]

class TestPearson(unittest.TestCase) :
  def testValues(self) :
    x = [1., 2., 4., 7., 8.]
    self.assertAlmostEqual(pearson(x, [2 * v + 1 for v in x]), 1.0, places = 12)
    self.assertAlmostEqual(pearson(x, [-v for v in x]), -1.0, places = 12)
    self.assertAlmostEqual(pearson([1, 2, 3], [1, 3, 2]), 0.5, places = 12)

  def testAffineInvariance(self) :
    rng = numpy.random.default_rng(0)
    x, y = rng.normal(0, 1, 20), rng.normal(0, 1, 20)
    r = pearson(x, y)
    self.assertAlmostEqual(pearson(3 * x + 1, y), r, places = 12)
    self.assertAlmostEqual(pearson(-3 * x + 1, y), -r, places = 12)

  def testUndefined(self) :
    self.assertRaises(ZeroVariance, pearson, [1, 1, 1], [1, 2, 3])
    self.assertRaises(InvalidRange, pearson, [1, 2], [1, 2])
    self.assertRaises(InvalidRange, pearson, [1, 2, 3], [1, 2, 3, 4])

class TestSweep(unittest.TestCase) :
  def setUp(self) :
    self.lm = irisLike(30, seed = 4)

  def testNoiselessLimit(self) :
    ts = SnrTaskSet(self.lm, [200.0], 1, 0)
    result = snrSweep(self.lm, ts, SPECS)
    for j, spec in enumerate(SPECS) :
      clean = predict(train(spec, self.lm), self.lm)[1]
      self.assertAlmostEqual(result.accuracies[0, j, 0], clean, places = 9)
    self.assertAlmostEqual(result.rs[0, 0], rsMeasure(self.lm), delta = 1e-3)

  def testShapesAndThreads(self) :
    ts = buildSNRTaskSet(self.lm, 5, 20, 4, 3, seed = 1)
    one = snrSweep(self.lm, ts, SPECS, nThreads = 1)
    many = snrSweep(self.lm, ts, SPECS, nThreads = 3)
    self.assertEqual(one.accuracies.shape, (4, 3, 3))
    self.assertEqual(one.rs.shape, (4, 3))
    self.assertTrue(numpy.array_equal(one.accuracies, many.accuracies))
    self.assertTrue(numpy.array_equal(one.rs, many.rs))

    d = one.asDict()
    self.assertEqual(d["levels"], [5.0, 10.0, 15.0, 20.0])
    self.assertEqual(d["trials"], 3)
    self.assertEqual(sorted(d["accuracy"]), sorted(s.name for s in SPECS))
    self.assertEqual(len(d["rs"]["std"]), 4)

  def testAccuracyFollowsSeparability(self) :
    ts = buildSNRTaskSet(self.lm, 5, 20, 6, 5, seed = 2)
    result = snrSweep(self.lm, ts, SPECS)
    self.assertGreater(result.rsMean[0], result.rsMean[-1])
    for name, r in result.correlations().items() :
      self.assertGreater(r, 0.8, name)

  def testNoClassifiers(self) :
    ts = SnrTaskSet(self.lm, [10.0], 1, 0)
    self.assertRaises(InvalidRange, snrSweep, self.lm, ts, [])

def load_tests(loader, tests, ignore) :
  tests.addTests(doctest.DocTestSuite(sweepModule))
  return tests

if __name__ == '__main__':
  unittest.main()
