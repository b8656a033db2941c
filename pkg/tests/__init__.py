"""
测试模块
"""

