"""
单元测试
"""

