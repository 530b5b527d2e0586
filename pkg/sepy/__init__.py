"""
Measures of how separable the classes of a labeled data set are, and the
experiments built on them.

.. automodule:: sepy.labeledMatrix
  :members:

.. automodule:: sepy.codingRate
  :members:

.. automodule:: sepy.separability
  :members:

.. automodule:: sepy.generators
  :members:

.. automodule:: sepy.preprocess
  :members:

.. automodule:: sepy.dataio
  :members:

.. automodule:: sepy.classifiers
  :members:

.. automodule:: sepy.snrSweep
  :members:

.. automodule:: sepy.abilityFit
  :members:

.. automodule:: sepy.layerProbe
  :members:

.. automodule:: sepy.studies
  :members:

.. automodule:: sepy.reports
  :members:

.. automodule:: sepy.errors
  :members:
"""

__version__ = '0.2.0'
"""The version of sepy"""
