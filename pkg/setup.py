from setuptools import find_packages, setup
import re


def get_property(prop, project):
    result = re.search(r'{}\s*=\s*[\'"]([^\'"]*)[\'"]'.format(prop),
                       open(f"{project}/__init__.py").read())
    return result.group(1)


project_name = 'validorder'
setup(name=project_name,
      version=get_property('__version__', project_name),
      author=get_property('__author__', project_name),
      description='Valid orderings (distinct partial sums) of subsets of '
      'abelian groups',
      packages=find_packages(exclude=['tests', 'tests.*']),
      python_requires='>=3.9',
      install_requires=['numpy', 'sympy'],
      entry_points={
          'console_scripts': ['validorder = validorder.run:main'],
      })
