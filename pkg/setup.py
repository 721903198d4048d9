# Copyright 2026 The RipsRecon Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Install RipsRecon."""

import os
import sys
import setuptools

# To enable importing version.py directly, we add its path to sys.path.
version_path = os.path.join(os.path.dirname(__file__), 'ripsrecon')
sys.path.append(version_path)
from version import __version__  # pylint: disable=g-import-not-at-top

# Get the long description from the README file.
with open('README.md') as fp:
  _LONG_DESCRIPTION = fp.read()

_jax_version = '0.4.16'
_jaxlib_version = '0.4.16'

setuptools.setup(
    name='ripsrecon',
    version=__version__,
    description=(
        'RipsRecon: Certified homotopy reconstruction of metric graphs from'
        ' noisy samples with Vietoris-Rips complexes.'
    ),
    long_description=_LONG_DESCRIPTION,
    long_description_content_type='text/markdown',
    license='Apache 2.0',
    py_modules=['core', 'experiments'],
    packages=[
        'ripsrecon',
        'ripsrecon._src',
        'ripsrecon._src.core',
        'ripsrecon._src.experiments',
        'ripsrecon.examples',
    ],
    package_data={'ripsrecon': ['examples/*.json', 'test_data/*']},
    include_package_data=True,
    scripts=[],
    entry_points={
        'console_scripts': [
            'ripsrecon = ripsrecon._src.experiments.cli:run',
        ],
    },
    install_requires=[
        'absl-py',
        'etils[epath]',
        'grain==0.1.0',
        f'jax >= {_jax_version}',
        f'jaxlib >= {_jaxlib_version}',
        'numpy',
        'scipy',
    ],
    extras_require={
        'test': ['google-benchmark', 'networkx', 'pytest'],
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    keywords='topology homology vietoris-rips metric-graphs reconstruction',
)
