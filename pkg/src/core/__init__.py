"""
核心模块

- arith: 分次多项式与形式幂级数
- chow: 模型 Chow 环、向量丛、嵌入与爆破
- orth: 正交丛与平方根欧拉类
- ktheory: K 理论版本
- fgl: 形式群律与扭曲平方根欧拉类
- cli: 脚本语言与运行报告
"""
