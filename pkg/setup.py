from setuptools import setup, find_packages
import os
import re

module_dir = os.path.dirname(os.path.abspath(__file__))


def readme():
    with open(os.path.join(module_dir, 'README.rst')) as f:
        return f.read()


def version():
    with open(os.path.join(module_dir, 'c3msv', '__init__.py')) as f:
        return re.search(r"^__version__ = '([^']+)'", f.read(), re.M).group(1)


setup(
    name='c3msv',
    version=version(),
    packages=find_packages(exclude=['tests']),
    description='Steering, decoherence and Wigner negativity of the coupled three-mode squeezed vacuum',
    long_description=readme(),
    install_requires=['numpy', 'scipy', 'pyparsing', 'monty'],
    extras_require={
        'dev': [
            'sphinx',
            'sphinx_rtd_theme',
            'pytest',
            'twine',
        ]
    },
    entry_points={
        'console_scripts': ['c3msv=c3msv.scripts.cli:main'],
    },
    author='Brandon Bocklund',
    author_email='brandonbocklund@gmail.com',
    url='https://github.com/phasesresearchlab/c3msv',
    license='MIT',
    classifiers=[
        # How mature is this project? Common values are
        #   3 - Alpha
        #   4 - Beta
        #   5 - Production/Stable
        'Development Status :: 3 - Alpha',

        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Physics',

        'License :: OSI Approved :: MIT License',

        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.6',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
    ],
)
