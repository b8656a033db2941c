"""
sqrteuler - 平方根欧拉类交理论计算引擎

在射影空间、完全交及其爆破的模型 Chow 环上计算正交丛的平方根欧拉类、
局部化类、K 理论与形式群律版本，并用脚本语言校验恒等式
"""

__version__ = "0.1.0"
