from setuptools import setup
import glob

classifiers=[
  "Development Status :: 3 - Alpha",
  "Environment :: Console",
  "Intended Audience :: Developers",
  "Intended Audience :: Science/Research",
  "License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)",
  "Programming Language :: Python",
  "Programming Language :: Python :: 3",
  "Topic :: Scientific/Engineering :: Artificial Intelligence"
  ]

from sepy import __version__

setup (name = 'sepy',
       version = __version__,
       description = 'Data separability measures and classifier ability utilities',
       long_description = open('README.md').read(),
       long_description_content_type = 'text/markdown',
       license = 'LGPL (V3)',
       classifiers = classifiers,
       platforms = ["Linux", "Mac OS-X"],
       packages = ['sepy'],
       package_dir={'sepy': 'sepy'},
       install_requires = ['numpy', 'scipy'],
       python_requires = '>=3.6',
       scripts = glob.glob('scripts/*'),
       )
