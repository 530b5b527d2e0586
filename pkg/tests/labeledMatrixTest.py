import unittest

import numpy

from sepy.labeledMatrix import LabeledMatrix
from sepy.errors import InvalidLabels, EmptyClass, NonFinite, DataError

class TestLabeledMatrix(unittest.TestCase) :
  def setUp(self) :
    self.x = numpy.arange(12.).reshape(2, 6)
    self.labels = [0, 1, 2, 0, 1, 2]

  def testShapes(self) :
    lm = LabeledMatrix(self.x, self.labels)
    self.assertEqual((lm.nFeatures, lm.nSamples, lm.k), (2, 6, 3))
    self.assertEqual(list(lm.classCounts()), [2, 2, 2])
    self.assertEqual(lm.samples().shape, (6, 2))
    self.assertEqual(lm.classData(1).tolist(), [[1., 4.], [7., 10.]])
    self.assertEqual(list(lm.classIndices(2)), [2, 5])

  def testFromSamples(self) :
    lm = LabeledMatrix.fromSamples(self.x.T, self.labels, meta = {"seed" : 1})
    self.assertTrue(numpy.array_equal(lm.data, self.x))
    self.assertEqual(lm.meta, {"seed" : 1})

  def testFrozen(self) :
    lm = LabeledMatrix(self.x, self.labels)
    self.x[0, 0] = 100
    self.assertEqual(lm.data[0, 0], 0.0)
    def poke() :
      lm.data[0, 0] = 1
    self.assertRaises(ValueError, poke)

  def testInvalid(self) :
    self.assertRaises(InvalidLabels, LabeledMatrix, self.x, [0, 1, 2])
    self.assertRaises(InvalidLabels, LabeledMatrix, self.x, [0, 1, 2, 0, 1, -1])
    self.assertRaises(InvalidLabels, LabeledMatrix, self.x, [0, 1, 2, 0, 1, 3], 3)
    self.assertRaises(InvalidLabels, LabeledMatrix, self.x, [0, .5, 1, 0, 1, 1])
    self.assertRaises(InvalidLabels, LabeledMatrix, [[1.0]], [0])
    self.assertRaises(EmptyClass, LabeledMatrix, self.x, [0, 2, 2, 0, 2, 2])
    self.assertRaises(EmptyClass, LabeledMatrix, self.x, self.labels, 4)
    bad = self.x.copy()
    bad[1, 3] = numpy.inf
    self.assertRaises(NonFinite, LabeledMatrix, bad, self.labels)
    self.assertTrue(issubclass(NonFinite, DataError))

  def testSingleClassAllowed(self) :
    lm = LabeledMatrix(self.x, [0] * 6)
    self.assertEqual(lm.k, 1)

  def testPermutedAndRelabeled(self) :
    lm = LabeledMatrix(self.x, self.labels)
    p = lm.permuted([5, 4, 3, 2, 1, 0])
    self.assertEqual(list(p.labels), [2, 1, 0, 2, 1, 0])
    self.assertEqual(p.data[0, 0], 5.0)
    r = lm.relabeled([2, 0, 1])
    self.assertEqual(list(r.labels), [2, 0, 1, 2, 0, 1])

  def testSubset(self) :
    lm = LabeledMatrix(self.x, self.labels)
    s = lm.subset([1, 2, 4, 5])
    self.assertEqual(s.k, 2)
    self.assertEqual(list(s.labels), [0, 1, 0, 1])

if __name__ == '__main__':
  unittest.main()
