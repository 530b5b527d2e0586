## This file is part of sepy.
## See the files gpl.txt and lgpl.txt for copying conditions.
#

"""
==========
Exceptions
==========

All errors raised on bad input derive from :class:`SepyError`.
:class:`DataError` covers problems with the data or the numerics (command line
exit code 1), :class:`UsageError` bad option combinations (exit code 2).
"""

__all__ = ["SepyError", "DataError", "UsageError",
           "NonFinite", "NonPositiveEpsilon", "InvalidLabels", "EmptyClass",
           "ZeroTotalRate", "DegenerateClass", "TooManySamples",
           "InvalidSpec", "DegenerateFeature", "ZeroVector", "ZeroSignalPower",
           "ParseError", "EmptyAfterCleaning", "InvalidRange",
           "SingleClass", "DimensionMismatch", "BadModelFile",
           "ZeroVariance", "FitDiverged", "RankDeficient", "AllSaturated",
           "BadMagic", "VersionMismatch", "ShapeMismatch",
           "LabelCountMismatch"]

class SepyError(Exception): pass

class DataError(SepyError): pass

class UsageError(SepyError): pass

# matrices and coding rates

class NonFinite(DataError): pass

class NonPositiveEpsilon(DataError): pass

class InvalidLabels(DataError): pass

class EmptyClass(DataError): pass

class ZeroTotalRate(DataError): pass

# distance measures

class DegenerateClass(DataError): pass

class TooManySamples(DataError): pass

# data generation, preprocessing and ingestion

class InvalidSpec(DataError): pass

class DegenerateFeature(DataError):
  def __init__(self, index, reason) :
    DataError.__init__(self, "feature %d: %s" % (index, reason))
    self.index = index

class ZeroVector(DataError):
  def __init__(self, index) :
    DataError.__init__(self, "sample %d has zero norm" % index)
    self.index = index

class ZeroSignalPower(DataError): pass

class ParseError(DataError):
  def __init__(self, row, col, cell) :
    DataError.__init__(self, "row %d, column %d: cannot parse %r" % (row, col, cell))
    self.row = row
    self.col = col

class EmptyAfterCleaning(DataError): pass

class InvalidRange(DataError): pass

# classifiers

class SingleClass(DataError): pass

class DimensionMismatch(DataError): pass

class BadModelFile(DataError): pass

# fitting

class ZeroVariance(DataError): pass

class FitDiverged(DataError): pass

class RankDeficient(DataError): pass

class AllSaturated(DataError): pass

# feature dumps

class BadMagic(DataError): pass

class VersionMismatch(DataError): pass

class ShapeMismatch(DataError):
  def __init__(self, message, offset = None) :
    if offset is not None :
      message = "%s (byte offset %d)" % (message, offset)
    DataError.__init__(self, message)
    self.offset = offset

class LabelCountMismatch(DataError): pass
